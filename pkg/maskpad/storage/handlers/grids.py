"""Plain-text grids: first line `rows cols`, then rows of space-separated decimals
"""

import numpy as np


def write_grid(path, grid: np.ndarray, precision: int = 6):
    """Write a 2-D grid

    Args:
        path (str | Path): Destination file
        grid (np.ndarray): The grid to write
        precision (int): Decimal places. Integer grids are written without decimals
    """
    grid = np.asarray(grid)
    if grid.ndim != 2:
        raise ValueError(f"Only 2-D grids can be written, got shape {grid.shape}")
    is_integer = np.issubdtype(grid.dtype, np.integer)
    lines = [f"{grid.shape[0]} {grid.shape[1]}"]
    for row in grid:
        if is_integer:
            lines.append(" ".join(str(int(value)) for value in row))
        else:
            lines.append(" ".join(f"{float(value):.{precision}f}" for value in row))
    with open(path, "w", encoding="utf-8") as grid_file:
        grid_file.write("\n".join(lines) + "\n")


def read_grid(path) -> np.ndarray:
    """Read a grid written by write_grid

    Raises:
        ValueError: Raised when the body does not match the declared shape

    Returns:
        np.ndarray: The grid as float64
    """
    with open(path, "r", encoding="utf-8") as grid_file:
        lines = [line.split() for line in grid_file.read().splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError(f"Missing 'rows cols' header in {path}")
    n_rows, n_cols = int(lines[0][0]), int(lines[0][1])
    body = lines[1:]
    if len(body) != n_rows or any(len(row) != n_cols for row in body):
        raise ValueError(f"Grid body in {path} does not match the declared shape {n_rows}x{n_cols}")
    return np.array([[float(value) for value in row] for row in body], dtype=np.float64)
