from dataclasses import dataclass


@dataclass
class AdapterConfig:
    """Batch-run settings.

    detector_threshold is recorded and applied verbatim: detections with
    score strictly greater than the threshold survive.  The default of
    -0.2 keeps everything a detector with [0, 1] scores emits.
    """

    caption_source: str
    image_dir: str
    out_conllu: str
    out_objects: str
    detector_threshold: float = -0.2
    annotator: str = "heuristic"
    detector: str = "manifest"
