from typing import Callable, Sequence, Union

import numpy as np
from numpy.typing import NDArray

ComplexArray = NDArray[np.complex128]
RealArray = NDArray[np.float64]
IntArray = NDArray[np.int64]

ComplexLike = Union[complex, float, int]
MatrixLike = Union[ComplexArray, RealArray, Sequence[Sequence[ComplexLike]]]
VectorLike = Union[ComplexArray, RealArray, Sequence[ComplexLike]]

# (N, g) points -> N values of a section in the classical trivialization
SectionCallable = Callable[[ComplexArray], ComplexArray]
# symmetric g x g matrix -> -log ||frame||^2
LogMetricCallable = Callable[[ComplexArray], float]
