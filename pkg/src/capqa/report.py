"""Corpus statistics: question-word distribution and report rendering."""

import json
from dataclasses import dataclass

from .records import QUESTION_WORDS

JSON_SENTINEL = "---JSON---"


@dataclass(frozen=True)
class CategoryHistogram:
    counts: dict
    total: int


def category_distribution(pairs):
    """Count generated pairs per question word."""
    counts = {word: 0 for word in QUESTION_WORDS}
    for pair in pairs:
        counts[pair.question_word] += 1
    return CategoryHistogram(counts=counts, total=len(pairs))


def render_report(hist, metrics=None):
    """Human-readable table plus a machine-readable JSON block."""
    lines = ["Question word distribution"]
    width = max(len(w) for w in QUESTION_WORDS)
    for word in QUESTION_WORDS:
        count = hist.counts.get(word, 0)
        pct = 100.0 * count / hist.total if hist.total else 0.0
        lines.append(f"  {word:<{width}}  {count:>5}  {pct:5.1f}%")
    lines.append(f"  {'total':<{width}}  {hist.total:>5}")
    payload = {"counts": hist.counts, "total": hist.total}
    if metrics is not None:
        lines.append("")
        lines.append("Metrics (x100)")
        lines.append(f"  BLEU     {metrics.bleu * 100:.2f}")
        lines.append(f"  ROUGE-L  {metrics.rouge_l * 100:.2f}")
        lines.append(f"  METEOR   {metrics.meteor * 100:.2f}")
        payload["metrics"] = {
            "bleu": metrics.bleu,
            "rouge_l": metrics.rouge_l,
            "meteor": metrics.meteor,
            "n_pairs": metrics.n_pairs,
        }
    lines.append(JSON_SENTINEL)
    lines.append(json.dumps(payload, ensure_ascii=False))
    lines.append(JSON_SENTINEL)
    return "\n".join(lines)


def parse_report_json(text):
    """Recover the JSON block from a rendered report."""
    parts = text.split(JSON_SENTINEL)
    if len(parts) < 3:
        raise ValueError("no JSON block found in report")
    return json.loads(parts[1].strip())
