"""capqa: question-answer pair generation from captions and detections."""

__version__ = "0.1.0"

from .answers import (
    AnswerCandidate,
    ExtractConfig,
    SynonymTable,
    assign_category,
    default_synonym_table,
    extract_answer,
    filter_captions,
    mask_caption,
)
from .conllu import parse_conllu, parse_conllu_file, to_conllu, write_conllu
from .errors import FormatError, TreeError
from .metrics import MetricReport, bleu, evaluate_corpus, meteor, rouge_l
from .questions import (
    GenConfig,
    GenStats,
    generate_qa,
    in_order,
    nearest_question,
    reconstruct_tree,
    wh_substitute,
)
from .records import (
    DetectedObject,
    ImageRecord,
    QAPair,
    build_image_records,
    qa_pair_violations,
    read_objects,
    read_qa,
    read_references,
    write_qa,
)
from .report import CategoryHistogram, category_distribution, parse_report_json, render_report
from .trees import DepToken, DepTree, strip_punct, validate_tree
