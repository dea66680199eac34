"""Deterministic CRMA-like corpus: analytic faces, print/replay textures and real face masks
"""

import logging
import uuid
from dataclasses import dataclass
import numpy as np
import shapely
from shapely.geometry import Polygon
from classes.category import Category, Medium
from classes.landmarks import LandmarkSet
from classes.manifest_row import ManifestRow
from classes.sample import Sample
from config import load_presets
from geometry.regions import mask_polygon

logger = logging.getLogger(__name__)

REFERENCE_SIZE = 224
NOISE_SIGMA = 0.01
MASK_NOISE_SIGMA = 0.005
ATTACK_AMPLITUDE = 0.05

# (category, medium) cells of the corpus, in manifest order
CORPUS_CELLS = [
    (Category.BM0, Medium.BONA_FIDE),
    (Category.BM1, Medium.BONA_FIDE),
    (Category.AM0, Medium.PRINT),
    (Category.AM1, Medium.PRINT),
    (Category.AM2, Medium.PRINT),
    (Category.AM0, Medium.REPLAY),
    (Category.AM1, Medium.REPLAY),
    (Category.AM2, Medium.REPLAY),
]


def hash_to_numeric(input_string: str) -> int:
    """Hash a string to a 32-bit number. The same value is returned every time"""
    return uuid.uuid5(uuid.NAMESPACE_DNS, input_string).int % (2**32)


@dataclass(frozen=True)
class SynthConfig:
    """Parameters of the synthetic corpus. Identical configs give bit-identical corpora"""

    n_identities: int = 40
    videos_per_identity_per_category: int = 1
    frames_per_video: int = 2
    seed: int = 0
    attack_texture_strength: float = 1.0
    image_size: int = 224
    crma_proportions: bool = True

    def __post_init__(self):
        for name in ("n_identities", "videos_per_identity_per_category", "frames_per_video", "image_size"):
            if int(getattr(self, name)) <= 0:
                raise ValueError(f"'{name}' must be a positive integer")
        if int(self.seed) < 0:
            raise ValueError("'seed' must be a non-negative integer")
        if not self.attack_texture_strength > 0:
            raise ValueError("'attack_texture_strength' must be positive")

    def videos_per_cell(self, category: Category, medium: Medium) -> int:
        """Videos generated per identity for one (category, medium) cell"""
        if not self.crma_proportions:
            return self.videos_per_identity_per_category
        proportions = load_presets()["crmaVideoProportions"]
        return proportions[f"{category.value}/{medium.value}"] * self.videos_per_identity_per_category


@dataclass(frozen=True)
class FaceParameters:
    """Per-identity parameter vector that fixes the analytic face"""

    center_x: float
    center_y: float
    axis_x: float
    axis_y: float
    eye_spacing: float
    skin_color: tuple
    mask_color: tuple
    background_color: tuple


def sample_face_parameters(rng: np.random.Generator, image_size: int) -> FaceParameters:
    """Draw a face in reference pixels (224) and scale it to the image size"""
    scale = image_size / REFERENCE_SIZE
    axis_x = rng.uniform(64.0, 74.0)
    skin = np.sort(rng.uniform([0.30, 0.40, 0.55], [0.60, 0.70, 0.85]))[::-1]
    return FaceParameters(
        center_x=(REFERENCE_SIZE / 2 + rng.uniform(-4.0, 4.0)) * scale,
        center_y=(REFERENCE_SIZE / 2 + rng.uniform(-4.0, 4.0)) * scale,
        axis_x=axis_x * scale,
        axis_y=rng.uniform(86.0, 96.0) * scale,
        eye_spacing=axis_x * rng.uniform(0.36, 0.44) * scale,
        skin_color=tuple(float(value) for value in skin),
        mask_color=tuple(float(value) for value in rng.uniform(0.15, 0.9, size=3)),
        background_color=tuple(float(value) for value in rng.uniform(0.1, 0.5, size=3)),
    )


def _ellipse_points(center_x, center_y, half_width, half_height, angles):
    return np.stack(
        [center_x + half_width * np.cos(angles), center_y - half_height * np.sin(angles)], axis=1
    )


def analytic_landmarks(face: FaceParameters, image_size: int, dx: float = 0.0, dy: float = 0.0) -> LandmarkSet:
    """68 landmarks of the analytic face, shifted by (dx, dy)

    Args:
        face (FaceParameters): The identity's face
        image_size (int): Side of the square image
        dx (float): Horizontal shift in pixels
        dy (float): Vertical shift in pixels

    Returns:
        LandmarkSet: The landmarks in standard 68-point order
    """
    cx, cy = face.center_x + dx, face.center_y + dy
    a, b = face.axis_x, face.axis_y
    points = np.zeros((68, 2))

    # jaw, ear to ear through the chin
    phi = np.pi - np.pi * np.arange(17) / 16
    points[0:17] = np.stack([cx + a * np.cos(phi), cy + b * np.sin(phi)], axis=1)

    eye_y = cy - 0.16 * b
    brow_y = eye_y - 0.2 * b
    eye_angles = np.array([np.pi, 2 * np.pi / 3, np.pi / 3, 0.0, -np.pi / 3, -2 * np.pi / 3])
    for brow_start, eye_start, eye_x in ((17, 36, cx - face.eye_spacing), (22, 42, cx + face.eye_spacing)):
        steps = np.arange(5) / 4
        points[brow_start : brow_start + 5] = np.stack(
            [eye_x + (steps - 0.5) * 0.45 * a, brow_y - 0.05 * b * np.sin(np.pi * steps)], axis=1
        )
        points[eye_start : eye_start + 6] = _ellipse_points(eye_x, eye_y, 0.18 * a, 0.04 * b, eye_angles)

    nose_tip_y = cy + 0.3 * b
    points[27:31] = np.stack([np.full(4, cx), np.linspace(eye_y, nose_tip_y, 4)], axis=1)
    points[31:36] = np.stack([cx + np.linspace(-0.2, 0.2, 5) * a, np.full(5, cy + 0.38 * b)], axis=1)

    mouth_y = cy + 0.62 * b
    points[48:60] = _ellipse_points(cx, mouth_y, 0.3 * a, 0.1 * b, np.pi - 2 * np.pi * np.arange(12) / 12)
    points[60:68] = _ellipse_points(cx, mouth_y, 0.2 * a, 0.04 * b, np.pi - 2 * np.pi * np.arange(8) / 8)
    return LandmarkSet(points, image_size, image_size)


def _pixel_centres(image_size: int):
    coords = np.arange(image_size, dtype=np.float64) + 0.5
    return np.meshgrid(coords, coords)


def _blob(xx, yy, x, y, half_width, half_height):
    return np.exp(-(((xx - x) / half_width) ** 2) - ((yy - y) / half_height) ** 2)


def render_bona_fide(face: FaceParameters, landmarks: LandmarkSet, rng: np.random.Generator) -> np.ndarray:
    """Smooth shaded face with soft features and low-amplitude noise"""
    size = landmarks.image_width
    xx, yy = _pixel_centres(size)
    cx, cy = landmarks.points[8, 0], landmarks.points[0, 1]
    a, b = face.axis_x, face.axis_y

    radius = np.sqrt(((xx - cx) / a) ** 2 + ((yy - (cy - 0.05 * b)) / (1.05 * b)) ** 2)
    face_alpha = 1.0 / (1.0 + np.exp(-(1.0 - radius) * 20.0))
    shading = 0.85 + 0.15 * (1.0 - np.clip(radius, 0.0, 1.0) ** 2) + 0.05 * (xx - cx) / a

    darkening = np.zeros_like(xx)
    for start in (36, 42):
        eye = landmarks.points[start : start + 6].mean(axis=0)
        darkening += 0.45 * _blob(xx, yy, eye[0], eye[1], 0.16 * a, 0.05 * b)
    for start in (17, 22):
        brow = landmarks.points[start : start + 5].mean(axis=0)
        darkening += 0.3 * _blob(xx, yy, brow[0], brow[1], 0.22 * a, 0.03 * b)
    mouth = landmarks.points[48:60].mean(axis=0)
    darkening += 0.25 * _blob(xx, yy, mouth[0], mouth[1], 0.28 * a, 0.07 * b)

    skin = np.array(face.skin_color)
    background = np.array(face.background_color)
    face_rgb = skin[None, None, :] * (shading * (1.0 - darkening))[..., None]
    image = face_alpha[..., None] * face_rgb + (1.0 - face_alpha[..., None]) * background[None, None, :]
    return image + rng.normal(0.0, NOISE_SIGMA, size=image.shape)


def attack_pattern(medium: Medium, image_size: int, rng: np.random.Generator) -> np.ndarray:
    """High-frequency periodic pattern of a print (halftone) or replay (moire) attack in [-1, 1]"""
    xx, yy = _pixel_centres(image_size)
    if medium == Medium.PRINT:
        phase = rng.uniform(0.0, 2 * np.pi, size=2)
        frequency = 0.25
        halftone = np.sin(2 * np.pi * frequency * xx + phase[0]) * np.sin(2 * np.pi * frequency * yy + phase[1])
        return np.repeat(halftone[..., None], 3, axis=2)
    if medium == Medium.REPLAY:
        angle = rng.uniform(0.2, 0.4)
        phases = rng.uniform(0.0, 2 * np.pi, size=3)
        frequency = 1.0 / 3.0
        stripes = xx * np.cos(angle) + yy * np.sin(angle)
        return np.stack([np.sin(2 * np.pi * frequency * stripes + phase) for phase in phases], axis=2)
    raise ValueError(f"Medium {medium.value} has no attack pattern")


def render_mask(face: FaceParameters, image_size: int, rng: np.random.Generator) -> np.ndarray:
    """Opaque fabric mask: flat colour with low-frequency folds"""
    _, yy = _pixel_centres(image_size)
    folds = 0.03 * np.sin(2 * np.pi * yy / (24.0 * image_size / REFERENCE_SIZE))
    image = np.array(face.mask_color)[None, None, :] * (1.0 + folds[..., None])
    return image + rng.normal(0.0, MASK_NOISE_SIGMA, size=image.shape)


def polygon_pixels(landmarks: LandmarkSet) -> np.ndarray:
    """Boolean H x W map of the pixels whose centre lies inside the mask polygon"""
    xx, yy = _pixel_centres(landmarks.image_width)
    return shapely.contains_xy(Polygon(mask_polygon(landmarks).vertices), xx, yy)


def quantize(image: np.ndarray) -> np.ndarray:
    """Clip to [0, 1] and round to 8 bits, so in-memory frames equal their PNGs"""
    return (np.rint(np.clip(image, 0.0, 1.0) * 255.0) / 255.0).astype(np.float32)


class SyntheticCorpus:
    """Manifest of a synthetic corpus plus on-demand frame rendering"""

    def __init__(self, config: SynthConfig):
        """Initialise the class

        Args:
            config (SynthConfig): The corpus parameters

        Raises:
            ValueError: Raised when there are fewer than 3 identities
        """
        if config.n_identities < 3:
            raise ValueError("At least 3 identities are needed to build disjoint splits")
        self.config = config
        self._faces = {}
        self.manifest = []
        for identity_index in range(config.n_identities):
            identity = f"id{identity_index:03d}"
            self._faces[identity] = sample_face_parameters(
                np.random.default_rng([config.seed, identity_index]), config.image_size
            )
            for category, medium in CORPUS_CELLS:
                for video_index in range(config.videos_per_cell(category, medium)):
                    video_id = f"{identity}_{category.value}_{medium.value}_{video_index:02d}"
                    self.manifest.append(
                        ManifestRow(
                            video_id=video_id,
                            identity=identity,
                            category=category,
                            medium=medium,
                            n_frames=config.frames_per_video,
                            path=f"videos/{video_id}",
                        )
                    )

    def face(self, identity: str) -> FaceParameters:
        """The face parameters of an identity"""
        return self._faces[identity]

    def render_frame(self, row: ManifestRow, frame_index: int) -> Sample:
        """Render one frame. Depends only on (config, video_id, frame_index)"""
        config = self.config
        video_rng = np.random.default_rng([config.seed, hash_to_numeric(row.video_id)])
        frame_rng = np.random.default_rng([config.seed, hash_to_numeric(row.video_id), frame_index + 1])
        face = self._faces[row.identity]

        shift = frame_rng.uniform(-2.0, 2.0, size=2) * config.image_size / REFERENCE_SIZE
        landmarks = analytic_landmarks(face, config.image_size, dx=shift[0], dy=shift[1])
        image = render_bona_fide(face, landmarks, frame_rng)

        inside, mask_texture = None, None
        if row.category in (Category.BM1, Category.AM1, Category.AM2):
            inside = polygon_pixels(landmarks)
            mask_texture = render_mask(face, config.image_size, frame_rng)
        if row.category == Category.AM1:
            # the mask is part of the presented artefact
            image = np.where(inside[..., None], mask_texture, image)
        if not row.category.is_bona_fide:
            pattern = attack_pattern(row.medium, config.image_size, video_rng)
            amplitude = ATTACK_AMPLITUDE * config.attack_texture_strength
            image = image + amplitude * pattern
        if row.category in (Category.BM1, Category.AM2):
            # a real mask in front of the camera, untouched by the attack medium
            image = np.where(inside[..., None], mask_texture, image)

        return Sample(
            image=quantize(image),
            category=row.category,
            medium=row.medium,
            identity=row.identity,
            landmarks=landmarks,
            frame_index=frame_index,
            video_id=row.video_id,
        )

    def render_video(self, row: ManifestRow) -> list:
        """Render every frame of a video"""
        return [self.render_frame(row, frame_index) for frame_index in range(row.n_frames)]

    def samples(self):
        """Iterate over every frame of the corpus in manifest order"""
        for row in self.manifest:
            yield from self.render_video(row)


def generate_synthetic_corpus(config: SynthConfig) -> SyntheticCorpus:
    """Build the manifest of a synthetic corpus; frames are rendered on demand

    Args:
        config (SynthConfig): The corpus parameters

    Raises:
        ValueError: Raised when there are fewer than 3 identities

    Returns:
        SyntheticCorpus: The manifest and a renderer for its frames
    """
    corpus = SyntheticCorpus(config)
    logger.info(
        "Synthetic corpus: %d identities, %d videos, %d frames per video",
        config.n_identities,
        len(corpus.manifest),
        config.frames_per_video,
    )
    return corpus
