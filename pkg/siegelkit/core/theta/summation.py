"""
Reproducible reductions.

Lattice terms are accumulated with Neumaier's compensated summation in a fixed
order, and grid values are reduced by a fixed-shape pairwise tree, so a result
depends only on its inputs and never on chunking or thread count.
"""

import numpy as np

from ...types import ComplexArray, RealArray


def _neumaier_real(rows: RealArray) -> RealArray:
    total = np.zeros(rows.shape[1:], dtype=np.float64)
    compensation = np.zeros_like(total)
    for row in rows:
        candidate = total + row
        big_total = np.abs(total) >= np.abs(row)
        compensation += np.where(
            big_total, (total - candidate) + row, (row - candidate) + total
        )
        total = candidate
    return total + compensation


def compensated_sum(terms: ComplexArray) -> ComplexArray:
    """
    Neumaier-compensated sum along the first axis, in the given row order.

    Real and imaginary parts carry separate compensation terms. Trailing axes
    are summed independently, which lets one call reduce the terms of many
    evaluation points at once.

    Example:
        >>> compensated_sum(np.array([1e16, 1.0, -1e16]))
        array(1.+0.j)
    """
    array = np.asarray(terms, dtype=np.complex128)
    if array.shape[0] == 0:
        return np.zeros(array.shape[1:], dtype=np.complex128)
    real = _neumaier_real(np.ascontiguousarray(array.real))
    imag = _neumaier_real(np.ascontiguousarray(array.imag))
    return real + 1j * imag


def pairwise_tree_sum(values: ComplexArray) -> complex:
    """
    Sum a 1-D array with a fixed-shape binary tree.

    The array is zero-padded to a power of two and folded in halves,
    ``v[i] += v[i + stride]`` with the stride halving each round.
    """
    flat = np.asarray(values, dtype=np.complex128).reshape(-1)
    if flat.size == 0:
        return 0j
    width = 1 << (int(flat.size) - 1).bit_length()
    padded = np.zeros(width, dtype=np.complex128)
    padded[: flat.size] = flat
    stride = width // 2
    while stride > 0:
        padded = padded[:stride] + padded[stride : 2 * stride]
        stride //= 2
    return complex(padded[0])
