"""Command-line front end: generate, evaluate and stats subcommands."""

import argparse
import logging
import sys
from multiprocessing import Pool

from . import __version__
from .answers import ExtractConfig, default_synonym_table, load_gazetteer, load_synonym_table
from .conllu import parse_conllu_file
from .errors import FormatError, TreeError
from .metrics import ALL_METRICS, evaluate_corpus, format_metric_report
from .questions import GenConfig, GenStats, generate_qa, load_wh_mapping
from .records import build_image_records, read_objects, read_qa, read_references, write_qa
from .report import category_distribution, render_report

logger = logging.getLogger("capqa")

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_USAGE = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="capqa",
        description="Generate and evaluate question-answer pairs from parsed "
        "image captions and object detections.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate QA pairs from captions and detections")
    gen.add_argument("--captions", required=True, help="CoNLL-U captions file")
    gen.add_argument("--objects", required=True, help="detections JSONL file")
    gen.add_argument("--out", required=True, help="output QA JSONL path")
    gen.add_argument("--filter-captions", action="store_true",
                     help="drop captions that mention no detected object")
    gen.add_argument("--no-objects-context", action="store_true",
                     help="skip object matching; use NER/noun-chunk answers only")
    gen.add_argument("--max-question-len", type=int, default=24, metavar="N",
                     help="maximum question length in tokens (default 24)")
    gen.add_argument("--synonyms", metavar="PATH",
                     help="TSV label<TAB>word1,word2,... synonym table")
    gen.add_argument("--gazetteer", metavar="PATH",
                     help="newline-separated animal label file")
    gen.add_argument("--wh-map", metavar="PATH",
                     help="TSV category<TAB>question-word overrides")
    gen.add_argument("--jobs", type=int, default=1, metavar="N",
                     help="generate per-image in N parallel processes")

    ev = sub.add_parser("evaluate", help="score generated questions against references")
    ev.add_argument("--qa", required=True, help="generated QA JSONL file")
    ev.add_argument("--references", required=True, help="reference questions JSONL file")
    ev.add_argument("--metrics", default="bleu,rouge_l,meteor", metavar="LIST",
                    help="comma-separated subset of bleu,rouge_l,meteor")
    ev.add_argument("--out", help="write the report here instead of stdout")

    st = sub.add_parser("stats", help="question-word distribution of a QA file")
    st.add_argument("--qa", required=True, help="generated QA JSONL file")
    st.add_argument("--out", help="write the report here instead of stdout")
    return parser


def _make_configs(args):
    synonyms = load_synonym_table(args.synonyms) if args.synonyms else default_synonym_table()
    ecfg = ExtractConfig(
        use_objects_context=not args.no_objects_context,
        filter_captions=args.filter_captions,
        synonym_table=synonyms,
    )
    if args.gazetteer:
        ecfg = ExtractConfig(
            use_objects_context=ecfg.use_objects_context,
            filter_captions=ecfg.filter_captions,
            synonym_table=ecfg.synonym_table,
            animal_gazetteer=load_gazetteer(args.gazetteer),
        )
    wh_mapping = load_wh_mapping(args.wh_map) if args.wh_map else None
    if args.max_question_len < 3:
        raise FormatError(f"--max-question-len must be >= 3, got {args.max_question_len}")
    gcfg = (
        GenConfig(max_question_tokens=args.max_question_len, wh_mapping=wh_mapping)
        if wh_mapping
        else GenConfig(max_question_tokens=args.max_question_len)
    )
    return ecfg, gcfg


def _generate_one(task):
    record, ecfg, gcfg = task
    stats = GenStats()
    pairs = generate_qa(record, ecfg, gcfg, stats)
    return pairs, stats


def run_generate(args, out):
    ecfg, gcfg = _make_configs(args)
    trees = parse_conllu_file(args.captions)
    detections = read_objects(args.objects)
    records = build_image_records(trees, detections)
    tasks = [(record, ecfg, gcfg) for record in records]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            results = pool.map(_generate_one, tasks)
    else:
        results = [_generate_one(task) for task in tasks]
    stats = GenStats()
    pairs = []
    for record_pairs, record_stats in results:
        pairs.extend(record_pairs)
        stats.merge(record_stats)
    write_qa(pairs, args.out)
    print(render_report(category_distribution(pairs)), file=out)
    print(
        f"captions: {stats.captions_seen}  filtered: {stats.captions_filtered}  "
        f"no answer: {stats.no_answer}  invalid: {stats.invalid_pair}  "
        f"pairs: {stats.pairs}",
        file=out,
    )
    logger.info("wrote %d pairs to %s", len(pairs), args.out)
    return EXIT_OK


def run_evaluate(args, out):
    metrics = {m.strip() for m in args.metrics.split(",") if m.strip()}
    unknown = metrics - ALL_METRICS
    if unknown:
        raise FormatError(f"unknown metrics: {', '.join(sorted(unknown))}")
    pairs = read_qa(args.qa)
    references = read_references(args.references)
    report = evaluate_corpus(pairs, references, metrics)
    text = format_metric_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
    else:
        print(text, file=out)
    return EXIT_OK


def run_stats(args, out):
    pairs = read_qa(args.qa)
    text = render_report(category_distribution(pairs))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
    else:
        print(text, file=out)
    return EXIT_OK


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"generate": run_generate, "evaluate": run_evaluate, "stats": run_stats}
    try:
        return handlers[args.command](args, out)
    except (FormatError, TreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
