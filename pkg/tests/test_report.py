from capqa.metrics import MetricReport
from capqa.records import QAPair
from capqa.report import category_distribution, parse_report_json, render_report


def pair(word):
    category = {"how many": "COUNT", "where": "LOCATION", "what": "OBJECT"}[word]
    return QAPair(
        image_id="i1", caption_id="c1", question=f"{word.capitalize()} x?",
        answer="y", category=category, question_word=word, answer_source="NER",
    )


def test_empty_histogram():
    hist = category_distribution([])
    assert hist.total == 0
    assert all(v == 0 for v in hist.counts.values())


def test_direct_counting():
    pairs = [pair("how many")] * 3 + [pair("where")]
    hist = category_distribution(pairs)
    assert hist.counts["how many"] == 3
    assert hist.counts["where"] == 1
    assert hist.total == 4


def test_total_equals_pair_count():
    pairs = [pair("what")] * 5 + [pair("where")] * 2
    assert category_distribution(pairs).total == len(pairs)
    assert sum(category_distribution(pairs).counts.values()) == len(pairs)


def test_render_then_parse_round_trips():
    hist = category_distribution([pair("how many"), pair("what")])
    payload = parse_report_json(render_report(hist))
    assert payload["counts"] == hist.counts
    assert payload["total"] == hist.total


def test_render_includes_metrics_block():
    hist = category_distribution([pair("what")])
    metrics = MetricReport(bleu=0.4778, rouge_l=0.1889, meteor=0.2761, n_pairs=1)
    text = render_report(hist, metrics)
    assert "47.78" in text
    assert "18.89" in text
    assert "27.61" in text
    payload = parse_report_json(text)
    assert payload["metrics"]["bleu"] == 0.4778
