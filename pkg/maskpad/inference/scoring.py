"""Regional weighted frame scores and their aggregation to video scores
"""

import logging
import math
from itertools import islice
import numpy as np
from tqdm import tqdm
from classes.grids import RegionWeights
from classes.score_record import ScoreRecord
from dataset.resize import resize_sample
from geometry.rasterize import region_weight_map
from network.model import predict

logger = logging.getLogger(__name__)


def frame_score(score_map, weight_map, normalize: bool = False) -> float:
    """Mean over all cells of the Hadamard product of the map and the weight map

    Args:
        score_map: g x g per-patch bona fide probabilities
        weight_map: RegionWeightMap or g x g weights
        normalize (bool): Divide by the sum of the weights instead of the cell count

    Raises:
        ValueError: Raised when the shapes differ

    Returns:
        float: The frame score, higher is more bona fide
    """
    score_map = np.asarray(score_map, dtype=np.float64)
    weights = np.asarray(getattr(weight_map, "grid", weight_map), dtype=np.float64)
    if score_map.shape != weights.shape:
        raise ValueError(f"Map shape {score_map.shape} does not match weight map shape {weights.shape}")
    weighted = score_map * weights
    if normalize:
        return float(weighted.sum() / weights.sum())
    return float(weighted.mean())


def video_score(frame_scores: list) -> float:
    """Arithmetic mean of the frame scores

    Raises:
        ValueError: Raised when there are no frames
    """
    frame_scores = list(frame_scores)
    if not frame_scores:
        raise ValueError("A video needs at least one frame score")
    return math.fsum(frame_scores) / len(frame_scores)


def aggregate_videos(frame_entries) -> list:
    """Average frame scores per video

    Args:
        frame_entries: Iterable of (video_id, identity, category, medium, frame score)

    Returns:
        list: ScoreRecords sorted by video_id
    """
    videos = {}
    for video_id, identity, category, medium, score in frame_entries:
        entry = videos.setdefault(video_id, {"meta": (identity, category, medium), "scores": []})
        entry["scores"].append(score)

    records = []
    for video_id in sorted(videos):
        identity, category, medium = videos[video_id]["meta"]
        scores = videos[video_id]["scores"]
        records.append(
            ScoreRecord(
                video_id=video_id,
                identity=identity,
                category=category,
                medium=medium,
                score=video_score(scores),
                n_frames=len(scores),
            )
        )
    return records


def _batches(iterable, size: int):
    iterator = iter(iterable)
    while True:
        batch = list(islice(iterator, size))
        if not batch:
            return
        yield batch


def score_corpus(
    model,
    samples,
    use_rw: bool,
    weights: RegionWeights = None,
    normalize: bool = False,
    batch_size: int = 32,
    progress: bool = True,
) -> list:
    """Score every frame with a frozen model and average per video

    Frames of any resolution are resized to the model input first.

    Args:
        model (PixelSupervisedNet): The trained model
        samples: Iterable of Samples
        use_rw (bool): Regional weighted scoring. Plain map mean when off
        weights (RegionWeights): Region weights. Defaults to the presets
        normalize (bool): Weight-normalised mean instead of the plain mean
        batch_size (int): Frames per forward pass
        progress (bool): Show a progress bar

    Raises:
        ValueError: Raised when regional weighting is on and a frame has no landmarks

    Returns:
        list: ScoreRecords sorted by video_id
    """
    if use_rw and weights is None:
        weights = RegionWeights.from_presets()
    config = model.config

    entries = []
    for batch in tqdm(_batches(samples, batch_size), desc="Scoring", unit="batch", disable=not progress):
        resized = [resize_sample(sample, config.input_size, config.map_size, pal=False)[0] for sample in batch]
        output = predict(model, np.stack([sample.image for sample in resized]))
        maps = output.map.detach().cpu().numpy().astype(np.float64)

        for sample, score_map in zip(resized, maps):
            if use_rw:
                if sample.landmarks is None:
                    raise ValueError(
                        f"Frame {sample.frame_index} of {sample.video_id} has no landmarks for regional weighting"
                    )
                weight_map = region_weight_map(sample.landmarks, weights, grid_size=config.map_size)
                score = frame_score(score_map, weight_map, normalize=normalize)
            else:
                score = float(score_map.mean())
            entries.append((sample.video_id, sample.identity, sample.category, sample.medium, score))

    records = aggregate_videos(entries)
    logger.info("Scored %d frames of %d videos (regional weighting %s)", len(entries), len(records), "on" if use_rw else "off")
    return records
