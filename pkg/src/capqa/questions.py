"""Question generation from masked captions.

Two surfaces exist side by side.  The nearest question is simply the
masked caption in original word order.  The relevant question reorders
the masked caption by (i) pruning the mask node's left dependents,
(ii) moving the mask-bearing child to the front of every ancestor's
child list, and (iii) an in-order traversal of the reconstructed tree.
The mask is then swapped for a question word chosen by answer category.
"""

import re
from dataclasses import dataclass, field

from .answers import ExtractConfig, extract_answer, filter_captions, mask_caption
from .records import CATEGORIES, QAPair, qa_pair_violations
from .trees import DepTree, strip_punct

MASK_RE = re.compile(r"^\[MASK:([A-Z]+)\]$")

DEFAULT_WH_MAPPING = {
    "PERSON": "who",
    "LOCATION": "where",
    "COUNT": "how many",
    "QUANTITY": "how much",
    "ENTITY": "which",
    "ANIMAL": "what",
    "OBJECT": "what",
}


def validate_wh_mapping(mapping):
    missing = [c for c in CATEGORIES if c not in mapping]
    if missing:
        raise ValueError(f"wh mapping missing categories: {', '.join(missing)}")
    return dict(mapping)


def load_wh_mapping(path):
    """Load a TSV of `category<TAB>question-word` overrides."""
    mapping = dict(DEFAULT_WH_MAPPING)
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            category, _, word = line.partition("\t")
            mapping[category.strip().upper()] = word.strip().lower()
    return validate_wh_mapping(mapping)


@dataclass(frozen=True)
class GenConfig:
    max_question_tokens: int = 24
    wh_mapping: dict = field(default_factory=lambda: dict(DEFAULT_WH_MAPPING))

    def __post_init__(self):
        if self.max_question_tokens < 3:
            raise ValueError("max_question_tokens must be >= 3")
        validate_wh_mapping(self.wh_mapping)


@dataclass
class GenStats:
    """Per-run diagnostic counters for generate_qa."""

    captions_seen: int = 0
    captions_filtered: int = 0
    no_answer: int = 0
    invalid_pair: int = 0
    pairs: int = 0

    def merge(self, other):
        self.captions_seen += other.captions_seen
        self.captions_filtered += other.captions_filtered
        self.no_answer += other.no_answer
        self.invalid_pair += other.invalid_pair
        self.pairs += other.pairs


def find_mask(tree):
    """The single mask token of a masked caption; error otherwise."""
    masks = [tok for tok in tree.tokens if MASK_RE.match(tok.form)]
    if len(masks) != 1:
        raise ValueError(f"expected exactly one mask token, found {len(masks)}")
    return masks[0]


def nearest_question(masked):
    """Token forms of the masked caption in original order, final punctuation dropped."""
    find_mask(masked)
    tokens = list(masked.tokens)
    while tokens and tokens[-1].deprel == "punct":
        tokens.pop()
    return [tok.form for tok in tokens]


def reconstruct_tree(masked):
    """Prune the mask's left dependents and front the mask path.

    Surviving tokens keep their original ids (the traversal interleaves by
    original index); front_children records, for every ancestor of the
    mask, the child that now comes first.
    """
    mask = find_mask(masked)
    children = masked.children_map()

    removed = set()
    for child in children[mask.id]:
        if child < mask.id:
            stack = [child]
            while stack:
                node = stack.pop()
                removed.add(node)
                stack.extend(children[node])

    path = masked.path_from_root(mask.id)
    front = tuple((parent, child) for parent, child in zip(path, path[1:]))

    kept = tuple(tok for tok in masked.tokens if tok.id not in removed)
    return DepTree(
        tokens=kept,
        sentence_id=masked.sentence_id,
        image_id=masked.image_id,
        front_children=front,
    )


def in_order(tree):
    """Emit tokens by in-order traversal, returning DepToken objects.

    At each node the fronted child (if any) is emitted first; the head and
    its remaining children are then interleaved by original token index.
    On a tree with no fronted children this reproduces the original token
    order.
    """
    children = tree.children_map()
    front = dict(tree.front_children)
    tokens = tree.token_map()
    out = []

    def emit(node):
        kids = children[node]
        fronted = front.get(node)
        if fronted is not None and fronted in kids:
            emit(fronted)
        for kid in kids:
            if kid != fronted and kid < node:
                emit(kid)
        out.append(tokens[node])
        for kid in kids:
            if kid != fronted and kid > node:
                emit(kid)

    emit(tree.root)
    return out


def wh_substitute(seq, category, cfg):
    """Swap the mask for its question word and realize the question string.

    seq may hold DepToken objects or plain strings; tokens tagged PROPN
    keep their case, everything else is lowercased.  The sequence is cut
    to cfg.max_question_tokens words and a terminal '?' is appended.
    """
    words = []
    propn = []
    n_masks = 0
    for item in seq:
        form = item.form if hasattr(item, "form") else item
        if MASK_RE.match(form):
            n_masks += 1
            qword = cfg.wh_mapping[category]
            for w in qword.split():
                words.append(w)
                propn.append(False)
        else:
            words.append(form)
            propn.append(hasattr(item, "upos") and item.upos == "PROPN")
    if n_masks != 1:
        raise ValueError(f"expected exactly one mask token, found {n_masks}")
    words = [w if propn[i] else w.lower() for i, w in enumerate(words)]
    words = words[: cfg.max_question_tokens]
    words[0] = words[0][:1].upper() + words[0][1:]
    return " ".join(words) + "?"


def generate_pair(tree, objects, ecfg, gcfg):
    """Run the per-caption pipeline; returns a QAPair or None."""
    cand = extract_answer(tree, objects, ecfg)
    if cand is None:
        return None
    masked = mask_caption(tree, cand)
    sequence = in_order(reconstruct_tree(strip_punct(masked)))
    question = wh_substitute(sequence, cand.category, gcfg)
    return QAPair(
        image_id=tree.image_id,
        caption_id=tree.sentence_id,
        question=question,
        answer=cand.surface,
        category=cand.category,
        question_word=gcfg.wh_mapping[cand.category],
        answer_source=cand.source,
    )


def generate_qa(record, ecfg=None, gcfg=None, stats=None):
    """Generate QA pairs for every caption of an image record.

    Captions that yield no answer, or whose pair violates the QA-pair
    invariants, produce nothing and are counted in stats.
    """
    ecfg = ecfg or ExtractConfig()
    gcfg = gcfg or GenConfig()
    stats = stats if stats is not None else GenStats()
    stats.captions_seen += len(record.captions)
    n_before = len(record.captions)
    record = filter_captions(record, ecfg)
    stats.captions_filtered += n_before - len(record.captions)
    pairs = []
    for tree in record.captions:
        pair = generate_pair(tree, record.objects, ecfg, gcfg)
        if pair is None:
            stats.no_answer += 1
            continue
        if qa_pair_violations(pair, max_tokens=gcfg.max_question_tokens):
            stats.invalid_pair += 1
            continue
        pairs.append(pair)
        stats.pairs += 1
    return pairs
