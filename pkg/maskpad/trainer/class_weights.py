"""Inverse-frequency class weights for the unbalanced bona fide/attack data
"""


def class_weights(manifest: list) -> tuple:
    """w_c = N_total / (2 N_c), counted over frames, so the two weights average to 1 per frame

    Args:
        manifest (list): ManifestRow entries of the training videos

    Raises:
        ValueError: Raised when the manifest is empty or a class is absent

    Returns:
        tuple: (w_bona_fide, w_attack)
    """
    if not manifest:
        raise ValueError("Cannot weight classes of an empty manifest")
    n_bona_fide = sum(row.n_frames for row in manifest if row.category.is_bona_fide)
    n_attack = sum(row.n_frames for row in manifest if not row.category.is_bona_fide)
    if n_bona_fide == 0 or n_attack == 0:
        raise ValueError("Both bona fide and attack videos are needed for class weights")
    n_total = n_bona_fide + n_attack
    return (n_total / (2 * n_bona_fide), n_total / (2 * n_attack))
