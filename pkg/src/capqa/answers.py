"""Answer selection and caption masking.

For each (image, caption) pair the answer is chosen in a fixed order:
detected-object matches first (when objects are used as context), then
the earliest named-entity span, then the earliest noun-chunk head.  The
chosen span is cut out of the caption and replaced by a single
`[MASK:<CATEGORY>]` token.
"""

from dataclasses import dataclass, field, replace

from .trees import DepToken, DepTree

# Words the detector label "person" may surface as in a caption.
PERSON_WORDS = frozenset({"person", "adult", "man", "woman", "boy", "girl"})

# COCO detector animal classes.
ANIMAL_WORDS = frozenset(
    {"bird", "cat", "dog", "horse", "sheep", "cow", "elephant", "bear", "zebra", "giraffe"}
)

NOUN_TAGS = ("NOUN", "PROPN")
CHUNK_RELS = frozenset({"det", "amod", "compound", "nummod"})


class SynonymTable:
    """Maps an object label to the caption words that may stand in for it."""

    def __init__(self, entries=None):
        self._entries = {}
        for label, words in (entries or {}).items():
            label = label.strip().lower()
            self._entries[label] = frozenset(w.strip().lower() for w in words) | {label}

    def expand(self, label):
        """Words equivalent to label, always including label itself."""
        return self._entries.get(label, frozenset()) | {label}

    def labels(self):
        return set(self._entries)


def default_synonym_table():
    return SynonymTable({"person": PERSON_WORDS})


def load_synonym_table(path):
    """Load a TSV of `label<TAB>word1,word2,...` entries."""
    entries = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            label, _, words = line.partition("\t")
            entries[label] = [w for w in words.split(",") if w.strip()]
    return SynonymTable(entries)


def load_gazetteer(path):
    """Load a newline-separated label file into a lowercase frozenset."""
    with open(path, encoding="utf-8") as f:
        return frozenset(
            line.strip().lower() for line in f if line.strip() and not line.startswith("#")
        )


@dataclass(frozen=True)
class ExtractConfig:
    use_objects_context: bool = True
    filter_captions: bool = False
    synonym_table: SynonymTable = field(default_factory=default_synonym_table)
    animal_gazetteer: frozenset = ANIMAL_WORDS


@dataclass(frozen=True)
class AnswerCandidate:
    """An answer span inside one caption.

    span is an inclusive (first_id, last_id) token-id range; head_id is the
    span token closest to the root.  surface is the answer string reported
    in the QA pair: the detector label for object matches, the span text
    otherwise.
    """

    tree_ref: tuple
    span: tuple
    head_id: int
    surface: str
    category: str
    source: str


def _token_words(tok):
    return {tok.form.lower(), tok.lemma.lower()}


def _caption_mentions_object(tree, objects, table):
    for obj in objects:
        words = table.expand(obj.label)
        for tok in tree.tokens:
            if _token_words(tok) & words:
                return True
    return False


def filter_captions(record, cfg):
    """Drop captions that mention no detected object (after synonym expansion).

    With cfg.filter_captions unset the record passes through unchanged.
    """
    if not cfg.filter_captions:
        return record
    kept = tuple(
        tree
        for tree in record.captions
        if _caption_mentions_object(tree, record.objects, cfg.synonym_table)
    )
    return replace(record, captions=kept)


def _span_head(tree, span_ids):
    """The span token closest to the root (smallest depth, then smallest id)."""
    return min(span_ids, key=lambda tid: (tree.depth(tid), tid))


def _ner_spans(tree):
    """Contiguous BIO spans as (first_id, last_id, type), in caption order."""
    spans = []
    current = None
    for tok in tree.tokens:
        tag = tok.ner
        if tag.startswith("B-"):
            if current:
                spans.append(current)
            current = [tok.id, tok.id, tag[2:]]
        elif tag.startswith("I-") and current and current[2] == tag[2:] and tok.id == current[1] + 1:
            current[1] = tok.id
        elif tag.startswith("I-"):
            # I- without a matching open span: treat as its own span.
            if current:
                spans.append(current)
            current = [tok.id, tok.id, tag[2:]]
        else:
            if current:
                spans.append(current)
            current = None
    if current:
        spans.append(current)
    return [tuple(s) for s in spans]


def _chunk_heads(tree):
    """Noun-chunk head tokens: NOUN/PROPN not folded into a later noun.

    A noun is part of a larger chunk when it attaches leftward to another
    noun via det/amod/compound/nummod; such tokens are not chunk heads.
    """
    tokens = tree.token_map()
    heads = []
    for tok in tree.tokens:
        if tok.upos not in NOUN_TAGS:
            continue
        parent = tokens.get(tok.head)
        if (
            parent is not None
            and parent.upos in NOUN_TAGS
            and parent.id > tok.id
            and tok.deprel in CHUNK_RELS
        ):
            continue
        heads.append(tok)
    return heads


def extract_answer(tree, objects, cfg):
    """Choose the answer span for one caption, or None when nothing qualifies.

    Order: (1) detected-object match by lemma or lowercase form, highest
    detector score first, ties broken by smallest token id; (2) earliest
    named-entity span; (3) earliest noun-chunk head.
    """
    ref = (tree.image_id, tree.sentence_id)
    if cfg.use_objects_context and objects:
        matches = []
        for obj in objects:
            words = cfg.synonym_table.expand(obj.label)
            for tok in tree.tokens:
                if _token_words(tok) & words:
                    matches.append((-obj.score, tok.id, obj, tok))
        if matches:
            matches.sort(key=lambda m: (m[0], m[1]))
            _, _, obj, tok = matches[0]
            cand = AnswerCandidate(
                tree_ref=ref,
                span=(tok.id, tok.id),
                head_id=tok.id,
                surface=obj.label,
                category="OBJECT",
                source="OBJECT_MATCH",
            )
            return replace(cand, category=assign_category(cand, tree, cfg))

    spans = _ner_spans(tree)
    if spans:
        first, last, _ = spans[0]
        span_ids = list(range(first, last + 1))
        surface = " ".join(tree.token(t).form for t in span_ids)
        cand = AnswerCandidate(
            tree_ref=ref,
            span=(first, last),
            head_id=_span_head(tree, span_ids),
            surface=surface,
            category="OBJECT",
            source="NER",
        )
        return replace(cand, category=assign_category(cand, tree, cfg))

    heads = _chunk_heads(tree)
    if heads:
        tok = heads[0]
        cand = AnswerCandidate(
            tree_ref=ref,
            span=(tok.id, tok.id),
            head_id=tok.id,
            surface=tok.form,
            category="OBJECT",
            source="NOUN_CHUNK",
        )
        return replace(cand, category=assign_category(cand, tree, cfg))
    return None


def assign_category(cand, tree, cfg=None):
    """Deterministic category for an answer candidate.

    Rule order: COUNT (NUM upos / CARDINAL), QUANTITY (MONEY, QUANTITY,
    PERCENT), PERSON (PERSON entity or person word), LOCATION (GPE, LOC,
    FAC), ANIMAL (gazetteer), ENTITY (remaining PROPN), OBJECT otherwise.
    """
    animals = cfg.animal_gazetteer if cfg is not None else ANIMAL_WORDS
    person_words = (
        cfg.synonym_table.expand("person") if cfg is not None else PERSON_WORDS | {"person"}
    )
    head = tree.token(cand.head_id)
    ner_type = head.ner[2:] if head.ner != "O" else ""
    surface = cand.surface.lower()
    if head.upos == "NUM" or ner_type == "CARDINAL":
        return "COUNT"
    if ner_type in ("MONEY", "QUANTITY", "PERCENT"):
        return "QUANTITY"
    if ner_type == "PERSON" or surface in person_words:
        return "PERSON"
    if ner_type in ("GPE", "LOC", "FAC"):
        return "LOCATION"
    if surface in animals or head.lemma.lower() in animals:
        return "ANIMAL"
    if head.upos == "PROPN":
        return "ENTITY"
    return "OBJECT"


def mask_caption(tree, cand):
    """Replace the answer span with a single [MASK:<CATEGORY>] token.

    The mask takes over the span head's attachment; outside tokens whose
    head was inside the span are re-attached to the mask.  When the span
    head's own ancestors pass back through the span, the mask attaches
    above the shallowest such ancestor so the result stays a tree.  Token
    ids are renumbered contiguously.
    """
    first, last = cand.span
    span = set(range(first, last + 1))
    tokens = tree.token_map()

    # Effective span head: the last span member on the head chain from
    # head_id up to the root (equals head_id for well-formed candidates).
    top = cand.head_id
    for node in tree.path_from_root(cand.head_id):
        if node in span:
            top = node
            break
    top_tok = tokens[top]

    mask_form = f"[MASK:{cand.category}]"
    mask = DepToken(
        id=first,
        form=mask_form,
        lemma=mask_form,
        upos="X",
        head=top_tok.head,
        deprel=top_tok.deprel,
    )

    rebuilt = []
    for tok in tree.tokens:
        if tok.id in span:
            if tok.id == first:
                rebuilt.append(mask)
            continue
        head = tok.head
        if head in span:
            head = first
        rebuilt.append(replace(tok, head=head))

    old_ids = [tok.id for tok in rebuilt]
    new_id = {old: new for new, old in enumerate(old_ids, start=1)}
    renumbered = tuple(
        replace(tok, id=new_id[tok.id], head=0 if tok.head == 0 else new_id[tok.head])
        for tok in rebuilt
    )
    return DepTree(
        tokens=renumbered,
        sentence_id=tree.sentence_id,
        image_id=tree.image_id,
    )
