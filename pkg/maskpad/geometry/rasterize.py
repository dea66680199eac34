"""Map continuous regions onto the patch grid: partial attack labels and region weight maps

A cell is inside a region when at least half of its patch area is covered. Polygon coverage
is the exact area of the polygon clipped to the patch rectangle (Sutherland-Hodgman).
"""

import numpy as np
from classes.category import Category
from classes.grids import PixelLabel, RegionWeightMap, RegionWeights
from classes.landmarks import LandmarkSet
from classes.shapes import MaskPolygon, Rect, polygon_area
from config import load_presets
from geometry.regions import eye_region, mask_polygon

# Clipping round-off must not flip an exact 50% tie to "outside"
COVERAGE_EPS = 1e-9


def _clip_half_plane(points: list, axis: int, bound: float, keep_above: bool) -> list:
    """Clip a closed polygon against the half-plane coordinate[axis] >= bound (or <= bound)"""

    def inside(point):
        return point[axis] >= bound if keep_above else point[axis] <= bound

    def crossing(start, end):
        t = (bound - start[axis]) / (end[axis] - start[axis])
        point = [start[0] + t * (end[0] - start[0]), start[1] + t * (end[1] - start[1])]
        point[axis] = bound
        return tuple(point)

    clipped = []
    if not points:
        return clipped
    previous = points[-1]
    previous_inside = inside(previous)
    for current in points:
        current_inside = inside(current)
        if current_inside:
            if not previous_inside:
                clipped.append(crossing(previous, current))
            clipped.append(current)
        elif previous_inside:
            clipped.append(crossing(previous, current))
        previous, previous_inside = current, current_inside
    return clipped


def clip_polygon_to_rect(vertices: np.ndarray, rect: Rect) -> np.ndarray:
    """Sutherland-Hodgman clipping of a simple polygon against an axis-aligned rectangle

    Args:
        vertices (np.ndarray): (n, 2) polygon vertices
        rect (Rect): The clip window

    Returns:
        np.ndarray: (m, 2) vertices of the clipped polygon, m may be 0
    """
    points = [tuple(vertex) for vertex in np.asarray(vertices, dtype=np.float64)]
    points = _clip_half_plane(points, 0, rect.x0, keep_above=True)
    points = _clip_half_plane(points, 0, rect.x1, keep_above=False)
    points = _clip_half_plane(points, 1, rect.y0, keep_above=True)
    points = _clip_half_plane(points, 1, rect.y1, keep_above=False)
    return np.array(points, dtype=np.float64).reshape(-1, 2)


def _cell_rect(row: int, col: int, image_size: tuple, grid_size: int) -> Rect:
    width, height = image_size
    cell_w = width / grid_size
    cell_h = height / grid_size
    return Rect(col * cell_w, row * cell_h, (col + 1) * cell_w, (row + 1) * cell_h)


def coverage_grid(polygon: MaskPolygon, image_size: tuple, grid_size: int = 14) -> np.ndarray:
    """Fraction of each patch covered by the polygon

    Args:
        polygon (MaskPolygon): The region
        image_size (tuple): (width, height) of the image
        grid_size (int): Cells along each side

    Returns:
        np.ndarray: (grid_size, grid_size) coverage fractions in [0, 1]
    """
    width, height = image_size
    if width <= 0 or height <= 0:
        raise ValueError(f"Image size must be positive, got {image_size}")
    cell_area = (width / grid_size) * (height / grid_size)
    x_min, y_min = polygon.vertices.min(axis=0)
    x_max, y_max = polygon.vertices.max(axis=0)

    coverage = np.zeros((grid_size, grid_size), dtype=np.float64)
    for row in range(grid_size):
        for col in range(grid_size):
            cell = _cell_rect(row, col, image_size, grid_size)
            if cell.x0 >= x_max or cell.x1 <= x_min or cell.y0 >= y_max or cell.y1 <= y_min:
                continue
            clipped = clip_polygon_to_rect(polygon.vertices, cell)
            coverage[row, col] = min(1.0, polygon_area(clipped) / cell_area)
    return coverage


def rect_coverage_grid(rect: Rect, image_size: tuple, grid_size: int = 14) -> np.ndarray:
    """Fraction of each patch covered by an axis-aligned rectangle (exact)"""
    width, height = image_size
    edges_x = np.linspace(0.0, width, grid_size + 1)
    edges_y = np.linspace(0.0, height, grid_size + 1)
    overlap_x = np.clip(
        np.minimum(edges_x[1:], rect.x1) - np.maximum(edges_x[:-1], rect.x0), 0.0, None
    ) / np.diff(edges_x)
    overlap_y = np.clip(
        np.minimum(edges_y[1:], rect.y1) - np.maximum(edges_y[:-1], rect.y0), 0.0, None
    ) / np.diff(edges_y)
    return np.outer(overlap_y, overlap_x)


def _is_covered(coverage: np.ndarray, threshold: float = None) -> np.ndarray:
    if threshold is None:
        threshold = load_presets()["coverageThreshold"]
    return coverage >= threshold - COVERAGE_EPS


def binary_label_map(category: Category, grid_size: int = 14) -> PixelLabel:
    """Conventional pixel-wise label: all ones for bona fide, all zeros for every attack"""
    category = Category(category)
    fill = 1 if category.is_bona_fide else 0
    return PixelLabel(np.full((grid_size, grid_size), fill, dtype=np.uint8), category)


def rasterize_label(
    polygon: MaskPolygon,
    category: Category,
    image_size: tuple,
    grid_size: int = 14,
    threshold: float = None,
) -> PixelLabel:
    """Partial attack label: the real-mask patches of an AM2 attack are labelled bona fide

    Args:
        polygon (MaskPolygon): The mask polygon, only used for AM2
        category (Category): The sample category
        image_size (tuple): (width, height) of the image
        grid_size (int): Cells along each side
        threshold (float): Coverage needed for a 1-cell. Defaults to the presets (0.5)

    Raises:
        ValueError: Raised when an AM2 label is requested without a polygon

    Returns:
        PixelLabel: All ones for BM0/BM1, all zeros for AM0/AM1, polygon cells set to one for AM2
    """
    category = Category(category)
    if category != Category.AM2:
        return binary_label_map(category, grid_size)
    if polygon is None:
        raise ValueError("An AM2 label needs the mask polygon")

    covered = _is_covered(coverage_grid(polygon, image_size, grid_size), threshold)
    return PixelLabel(covered.astype(np.uint8), category)


def region_weight_map(
    landmarks: LandmarkSet,
    weights: RegionWeights = None,
    image_size: tuple = None,
    grid_size: int = 14,
    threshold: float = None,
) -> RegionWeightMap:
    """Per-image weight map: eye cells, then mask cells, then everything else

    The map only depends on geometry, so it is built the same way for every category.

    Args:
        landmarks (LandmarkSet): The face landmarks
        weights (RegionWeights): Region weights. Defaults to the presets (0.6, 0.1, 0.3)
        image_size (tuple): (width, height). Defaults to the landmark image size, which it must match
        grid_size (int): Cells along each side
        threshold (float): Coverage needed to belong to a region. Defaults to the presets

    Raises:
        ValueError: Raised when image_size differs from the image the landmarks were taken on

    Returns:
        RegionWeightMap: The weight map
    """
    if weights is None:
        weights = RegionWeights.from_presets()
    landmark_size = (landmarks.image_width, landmarks.image_height)
    if image_size is None:
        image_size = landmark_size
    elif tuple(image_size) != landmark_size:
        raise ValueError(f"Image size {tuple(image_size)} does not match the landmark image size {landmark_size}")

    in_eye = _is_covered(rect_coverage_grid(eye_region(landmarks), image_size, grid_size), threshold)
    in_mask = _is_covered(
        coverage_grid(mask_polygon(landmarks), image_size, grid_size), threshold
    )

    grid = np.where(in_eye, weights.eye, np.where(in_mask, weights.mask, weights.other))
    return RegionWeightMap(grid, weights)
