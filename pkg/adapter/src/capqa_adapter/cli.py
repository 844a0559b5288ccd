"""Command line for the preprocessing adapter."""

import argparse
import logging
import sys

from . import __version__
from .annotate import get_annotator
from .config import AdapterConfig
from .detect import get_detector
from .export import export_detections, export_parses


def build_parser():
    parser = argparse.ArgumentParser(
        prog="capqa-adapter",
        description="Annotate raw captions and detect objects, writing the "
        "CoNLL-U and JSONL inputs of the question-generation pipeline.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--captions", required=True, help="MSCOCO-style captions JSON")
    parser.add_argument("--image-dir", required=True, help="directory of images")
    parser.add_argument("--out-conllu", required=True, help="output CoNLL-U path")
    parser.add_argument("--out-objects", required=True, help="output detections JSONL path")
    parser.add_argument("--threshold", type=float, default=-0.2,
                        help="keep detections with score strictly above this (default -0.2)")
    parser.add_argument("--annotator", choices=("heuristic", "spacy"), default="heuristic")
    parser.add_argument("--detector", choices=("manifest", "torchvision"), default="manifest")
    parser.add_argument("--verbose", action="store_true")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = AdapterConfig(
        caption_source=args.captions,
        image_dir=args.image_dir,
        out_conllu=args.out_conllu,
        out_objects=args.out_objects,
        detector_threshold=args.threshold,
        annotator=args.annotator,
        detector=args.detector,
    )
    try:
        annotator = get_annotator(cfg.annotator)
        detector = get_detector(cfg.detector, cfg.image_dir)
        n_blocks = export_parses(cfg, annotator)
        n_lines = export_detections(cfg, detector)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"captions: {n_blocks} blocks -> {cfg.out_conllu}")
    print(f"images:   {n_lines} lines -> {cfg.out_objects}")
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
