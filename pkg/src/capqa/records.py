"""Image records, detections and QA pairs, plus their JSONL formats."""

import json
from dataclasses import asdict, dataclass

from .errors import FormatError

CATEGORIES = ("PERSON", "ANIMAL", "LOCATION", "COUNT", "QUANTITY", "ENTITY", "OBJECT")
QUESTION_WORDS = ("who", "what", "which", "where", "how many", "how much")
ANSWER_SOURCES = ("OBJECT_MATCH", "NOUN_CHUNK", "NER")


@dataclass(frozen=True)
class DetectedObject:
    """One detected object label with its detector confidence."""

    label: str
    score: float

    def __post_init__(self):
        if not self.label or self.label != self.label.strip().lower():
            raise ValueError(f"label must be non-empty lowercase, got {self.label!r}")


@dataclass(frozen=True)
class ImageRecord:
    """Everything known about one image: detections and parsed captions."""

    image_id: str
    objects: tuple
    captions: tuple

    def __post_init__(self):
        for tree in self.captions:
            if tree.image_id != self.image_id:
                raise ValueError(
                    f"caption {tree.sentence_id} carries image_id {tree.image_id!r}, "
                    f"record is {self.image_id!r}"
                )


@dataclass(frozen=True)
class QAPair:
    image_id: str
    caption_id: str
    question: str
    answer: str
    category: str
    question_word: str
    answer_source: str


def question_tokens(question):
    """Whitespace tokens of a question with the terminal '?' removed."""
    text = question.rstrip()
    if text.endswith("?"):
        text = text[:-1]
    return text.split()


def qa_pair_violations(pair, max_tokens=24):
    """Return a list of violated QAPair invariants (empty when valid)."""
    problems = []
    if not pair.question.endswith("?"):
        problems.append("question does not end with '?'")
    if not pair.question.lower().startswith(pair.question_word):
        problems.append(f"question does not begin with {pair.question_word!r}")
    if pair.question_word not in QUESTION_WORDS:
        problems.append(f"unknown question word {pair.question_word!r}")
    if pair.category not in CATEGORIES:
        problems.append(f"unknown category {pair.category!r}")
    if pair.answer_source not in ANSWER_SOURCES:
        problems.append(f"unknown answer source {pair.answer_source!r}")
    tokens = question_tokens(pair.question)
    if len(tokens) > max_tokens:
        problems.append(f"question has {len(tokens)} tokens, limit {max_tokens}")
    if pair.answer.lower() in {t.lower() for t in tokens}:
        problems.append("answer occurs as a question token")
    return problems


def read_objects(path):
    """Read detections JSONL into image_id -> list of DetectedObject.

    Labels are lowercased and trimmed; repeated image_id lines are merged
    by concatenating their object lists.
    """
    detections = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc}", path=str(path), line=lineno)
            if "image_id" not in payload:
                raise FormatError("missing field 'image_id'", path=str(path), line=lineno)
            if "objects" not in payload:
                raise FormatError("missing field 'objects'", path=str(path), line=lineno)
            image_id = str(payload["image_id"])
            objects = detections.setdefault(image_id, [])
            for i, obj in enumerate(payload["objects"]):
                if "label" not in obj or "score" not in obj:
                    raise FormatError(
                        f"object {i} missing 'label' or 'score'",
                        path=str(path),
                        line=lineno,
                    )
                label = str(obj["label"]).strip().lower()
                if not label:
                    raise FormatError(f"object {i} has empty label", path=str(path), line=lineno)
                objects.append(DetectedObject(label=label, score=float(obj["score"])))
    return detections


def build_image_records(trees, detections):
    """Group captions by image and join them with their detections.

    Record order follows the first appearance of each image in the caption
    file; images without a detections line get an empty object list.
    """
    by_image = {}
    for tree in trees:
        by_image.setdefault(tree.image_id, []).append(tree)
    return [
        ImageRecord(
            image_id=image_id,
            objects=tuple(detections.get(image_id, ())),
            captions=tuple(captions),
        )
        for image_id, captions in by_image.items()
    ]


def write_qa(pairs, path):
    """Write QA pairs as JSONL, one object per line, stable key order."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for pair in pairs:
                f.write(json.dumps(asdict(pair), ensure_ascii=False))
                f.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_qa(path):
    pairs = []
    fields = ("image_id", "caption_id", "question", "answer", "category",
              "question_word", "answer_source")
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc}", path=str(path), line=lineno)
            missing = [k for k in fields if k not in payload]
            if missing:
                raise FormatError(
                    f"missing fields: {', '.join(missing)}", path=str(path), line=lineno
                )
            pairs.append(QAPair(**{k: payload[k] for k in fields}))
    return pairs


def read_references(path):
    """Read reference questions JSONL into two lookup maps.

    Returns (by_caption, by_image): reference texts keyed by
    (image_id, caption_id) and by image_id alone.  Lines without a
    caption_id only feed the image-level map.
    """
    by_caption = {}
    by_image = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc}", path=str(path), line=lineno)
            if "image_id" not in payload or "question" not in payload:
                raise FormatError(
                    "missing field 'image_id' or 'question'", path=str(path), line=lineno
                )
            image_id = str(payload["image_id"])
            question = str(payload["question"])
            by_image.setdefault(image_id, []).append(question)
            caption_id = payload.get("caption_id")
            if caption_id is not None:
                by_caption.setdefault((image_id, str(caption_id)), []).append(question)
    return by_caption, by_image
