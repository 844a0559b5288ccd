"""Text-generation metrics: BLEU, ROUGE-L and METEOR.

All functions work on token sequences and return values in [0, 1].
Sentence-level BLEU applies add-one smoothing to the n >= 2 precisions;
corpus BLEU aggregates match counts across pairs with no smoothing.
ROUGE-L is the balanced LCS F-score.  METEOR uses exact-match unigram
alignment (most matches, then fewest chunks) with the standard
fragmentation penalty 0.5 * (chunks / matches)^3.
"""

import math
from dataclasses import dataclass


def _gram_counts(tokens, n):
    counts = {}
    if n == 1:
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
        return counts
    if isinstance(tokens, list):  # list slices are unhashable keys
        for i in range(len(tokens) - n + 1):
            gram = tuple(tokens[i : i + n])
            counts[gram] = counts.get(gram, 0) + 1
        return counts
    for i in range(len(tokens) - n + 1):
        gram = tokens[i : i + n]
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def _clipped_matches(candidate, references, n):
    """(clipped match count, candidate n-gram count) for one order n."""
    total = len(candidate) - n + 1
    if total <= 0:
        return 0, 0
    cand = _gram_counts(candidate, n)
    if len(references) == 1:
        best = _gram_counts(references[0], n)
    else:
        best = {}
        for ref in references:
            for gram, count in _gram_counts(ref, n).items():
                if count > best.get(gram, 0):
                    best[gram] = count
    matched = 0
    for gram, count in cand.items():
        in_refs = best.get(gram, 0)
        matched += count if count < in_refs else in_refs
    return matched, total


def _closest_ref_length(candidate, references):
    c = len(candidate)
    return min((len(r) for r in references), key=lambda rl: (abs(rl - c), rl))


def _brevity_penalty(c, r):
    if c == 0:
        return 0.0
    if c < r:
        return math.exp(1.0 - r / c)
    return 1.0


def bleu(candidate, references, max_n=4):
    """Sentence-level BLEU against one or more references.

    Inputs are token sequences (lists or tuples); add-one smoothing is
    applied to the n >= 2 precisions.
    """
    references = [r for r in references if len(r) > 0]
    if not candidate or not references:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        matched, total = _clipped_matches(candidate, references, n)
        if n >= 2:
            matched, total = matched + 1, total + 1
        if matched == 0:
            return 0.0
        log_sum += math.log(matched / total)
    score = math.exp(log_sum / max_n)
    return _brevity_penalty(len(candidate), _closest_ref_length(candidate, references)) * score


def _corpus_bleu(pairs, max_n=4):
    """Corpus BLEU over (candidate, references) pairs, aggregated counts."""
    matched = [0] * (max_n + 1)
    total = [0] * (max_n + 1)
    c_len = 0
    r_len = 0
    for candidate, references in pairs:
        references = [r for r in references if len(r) > 0]
        if not candidate or not references:
            continue
        c_len += len(candidate)
        r_len += _closest_ref_length(candidate, references)
        for n in range(1, max_n + 1):
            m, t = _clipped_matches(candidate, references, n)
            matched[n] += m
            total[n] += t
    if c_len == 0:
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, max_n + 1):
        if total[n] == 0:
            continue  # every candidate shorter than n
        if matched[n] == 0:
            return 0.0
        log_sum += math.log(matched[n] / total[n])
        orders += 1
    if orders == 0:
        return 0.0
    return _brevity_penalty(c_len, r_len) * math.exp(log_sum / orders)


def _lcs_length(a, b):
    """Bit-parallel LCS length: one bit per reference position, one
    integer update per candidate token."""
    nb = len(b)
    match = {}
    for j, y in enumerate(b):
        match[y] = match.get(y, 0) | (1 << j)
    mask = (1 << nb) - 1
    v = mask
    for x in a:
        u = v & match.get(x, 0)
        if u:
            v = ((v + u) | (v - u)) & mask
    return nb - bin(v).count("1")


def rouge_l(candidate, reference, beta=1.0):
    """LCS F-score; beta weights recall (1.0 = balanced)."""
    if not candidate or not reference:
        return 0.0
    lcs = _lcs_length(candidate, reference)
    if lcs == 0:
        return 0.0
    p = lcs / len(candidate)
    r = lcs / len(reference)
    b2 = beta * beta
    return (1 + b2) * p * r / (r + b2 * p)


def _single_block(candidate, reference, m):
    """True when one length-m window of the candidate matches a reference
    window verbatim, i.e. all matches fit in a single chunk."""
    if isinstance(candidate, str) and isinstance(reference, str):
        for i in range(len(candidate) - m + 1):
            if reference.find(candidate[i : i + m]) >= 0:
                return True
        return False
    for i in range(len(candidate) - m + 1):
        window = list(candidate[i : i + m])
        for j in range(len(reference) - m + 1):
            if list(reference[j : j + m]) == window:
                return True
    return False


def _min_chunks(candidate, reference, need, ref_positions, remaining):
    """Fewest chunks over all maximum exact-match alignments.

    Iterative deepening on the chunk budget: for each budget a memoized
    depth-first search over candidate positions asks whether a maximum
    matching with that many chunks exists.  Continuations of the live
    chunk are free; opening a chunk spends budget.
    """
    m = sum(need.values())
    if _single_block(candidate, reference, m):
        return 1
    n_cand = len(candidate)
    n_ref = len(reference)
    key_stride = n_ref + 2

    def feasible(i, used, prev_j, budget, needed,
                 _cand=candidate, _ref=reference, _need=need, _rem=remaining,
                 _pos=ref_positions):
        if needed == 0:
            return True
        if i == n_cand or (budget == 0 and prev_j < 0):
            return False
        key = ((i * (1 << n_ref) + used) * key_stride + prev_j + 1) * (m + 1) + budget
        if key in seen:
            return False
        word = _cand[i]
        quota = _need.get(word, 0)
        _rem[word] -= 1
        try:
            # Continuation of the live chunk is free.
            if quota > 0:
                _need[word] = quota - 1
                cont = prev_j + 1 if 0 <= prev_j + 1 < n_ref else -1
                if cont >= 0 and not used & (1 << cont) and _ref[cont] == word:
                    if feasible(i + 1, used | (1 << cont), cont, budget, needed - 1):
                        _need[word] = quota
                        return True
                if budget > 0:  # open a new chunk
                    for j in _pos[word]:
                        if j != cont and not used & (1 << j):
                            if feasible(i + 1, used | (1 << j), j, budget - 1, needed - 1):
                                _need[word] = quota
                                return True
                _need[word] = quota
            # Skip only while later occurrences can still fill the quota.
            if _rem[word] >= quota:
                if feasible(i + 1, used, -2, budget, needed):
                    return True
        finally:
            _rem[word] += 1
        seen.add(key)
        return False

    for budget in range(2, m + 1):
        seen = set()
        if feasible(0, 0, -2, budget, m):
            return budget
    return m


def meteor(candidate, reference):
    """Exact-match METEOR score of a candidate against one reference."""
    if not candidate or not reference:
        return 0.0
    ref_positions = {}
    for j, w in enumerate(reference):
        positions = ref_positions.get(w)
        if positions is None:
            ref_positions[w] = [j]
        else:
            positions.append(j)
    cand_counts = {}
    for w in candidate:
        cand_counts[w] = cand_counts.get(w, 0) + 1
    need = {}
    m = 0
    for w, c in cand_counts.items():
        positions = ref_positions.get(w)
        if positions:
            rc = len(positions)
            k = c if c < rc else rc
            need[w] = k
            m += k
    if m == 0:
        return 0.0
    chunks = (
        1 if m == 1 else _min_chunks(candidate, reference, need, ref_positions, cand_counts)
    )
    p = m / len(candidate)
    r = m / len(reference)
    fmean = 10.0 * p * r / (r + 9.0 * p)
    penalty = 0.5 * (chunks / m) ** 3
    return fmean * (1.0 - penalty)


@dataclass(frozen=True)
class MetricReport:
    bleu: float
    rouge_l: float
    meteor: float
    n_pairs: int
    skipped: tuple = ()


def tokenize_question(text):
    """Lowercased whitespace tokens with a terminal '?' removed."""
    text = text.strip().lower()
    if text.endswith("?"):
        text = text[:-1]
    return text.split()


ALL_METRICS = frozenset({"bleu", "rouge_l", "meteor"})


def evaluate_corpus(candidates, references, metrics=ALL_METRICS):
    """Score generated questions against reference questions.

    candidates are QAPair-like objects; references is the
    (by_caption, by_image) pair returned by read_references.  Corpus BLEU
    aggregates counts; ROUGE-L and METEOR report the per-pair best
    reference, averaged.  Candidates with no reference are skipped and
    listed in the report.
    """
    unknown = set(metrics) - ALL_METRICS
    if unknown:
        raise ValueError(f"unknown metrics: {', '.join(sorted(unknown))}")
    by_caption, by_image = references
    scored = []
    skipped = []
    for pair in candidates:
        refs = by_caption.get((pair.image_id, pair.caption_id))
        if not refs:
            refs = by_image.get(pair.image_id)
        if not refs:
            skipped.append((pair.image_id, pair.caption_id))
            continue
        cand_tokens = tokenize_question(pair.question)
        ref_tokens = [tokenize_question(r) for r in refs]
        scored.append((cand_tokens, ref_tokens))
    n = len(scored)
    bleu_score = rouge_score = meteor_score = 0.0
    if n:
        if "bleu" in metrics:
            bleu_score = _corpus_bleu(scored)
        if "rouge_l" in metrics:
            rouge_score = sum(max(rouge_l(c, r) for r in refs) for c, refs in scored) / n
        if "meteor" in metrics:
            meteor_score = sum(max(meteor(c, r) for r in refs) for c, refs in scored) / n
    return MetricReport(
        bleu=bleu_score,
        rouge_l=rouge_score,
        meteor=meteor_score,
        n_pairs=n,
        skipped=tuple(skipped),
    )


def format_metric_report(report):
    """Table-style rendering with scores scaled to 0-100."""
    lines = [
        "metric    score",
        f"BLEU      {report.bleu * 100:.2f}",
        f"ROUGE-L   {report.rouge_l * 100:.2f}",
        f"METEOR    {report.meteor * 100:.2f}",
        f"pairs     {report.n_pairs}",
    ]
    if report.skipped:
        lines.append(f"skipped   {len(report.skipped)} candidate(s) without references")
    return "\n".join(lines)
