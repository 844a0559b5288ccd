"""capqa_adapter: turn raw captions and images into the question-generation
pipeline's input files (CoNLL-U captions, detections JSONL)."""

__version__ = "0.1.0"

from .annotate import HeuristicAnnotator, get_annotator
from .config import AdapterConfig
from .detect import ManifestDetector, get_detector
from .export import export_detections, export_parses, read_mscoco_captions
