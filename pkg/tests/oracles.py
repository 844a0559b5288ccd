"""Independent brute-force oracles used to cross-check the fast paths.

Everything here favors obviousness over speed: n-grams are counted with
list.count, the LCS comes from subsequence enumeration, METEOR chunks
from full alignment enumeration, and tree acyclicity from union-find.
Nothing is shared with the implementation under test.
"""

import itertools
import math


def _gram_list(tokens, n):
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def oracle_bleu(candidate, references, max_n=4):
    """Sentence BLEU by direct enumeration (add-one smoothing for n >= 2)."""
    candidate = list(candidate)
    references = [list(r) for r in references if r]
    if not candidate or not references:
        return 0.0
    product = 1.0
    for n in range(1, max_n + 1):
        grams = _gram_list(candidate, n)
        ref_grams = [_gram_list(ref, n) for ref in references]
        matched = 0
        for gram in set(grams):
            in_refs = max(rg.count(gram) for rg in ref_grams)
            matched += min(grams.count(gram), in_refs)
        total = len(grams)
        if n >= 2:
            matched += 1
            total += 1
        if matched == 0:
            return 0.0
        product *= (matched / total) ** (1.0 / max_n)
    c = len(candidate)
    r = min((len(ref) for ref in references), key=lambda rl: (abs(rl - c), rl))
    bp = math.exp(1.0 - r / c) if c < r else 1.0
    return bp * product


def oracle_lcs(a, b):
    """Longest common subsequence length by enumerating every subsequence
    of both sides and intersecting the two sets."""
    def all_subsequences(seq):
        subs = set()
        for length in range(1, len(seq) + 1):
            for picks in itertools.combinations(range(len(seq)), length):
                subs.add(tuple(seq[i] for i in picks))
        return subs

    common = all_subsequences(list(a)) & all_subsequences(list(b))
    return max((len(s) for s in common), default=0)


def oracle_rouge_l(candidate, reference, beta=1.0):
    candidate = list(candidate)
    reference = list(reference)
    if not candidate or not reference:
        return 0.0
    lcs = oracle_lcs(candidate, reference)
    if lcs == 0:
        return 0.0
    p = lcs / len(candidate)
    r = lcs / len(reference)
    b2 = beta * beta
    return (1 + b2) * p * r / (r + b2 * p)


def _all_max_alignments(candidate, reference):
    """Yield every maximum exact-match alignment as a candidate-indexed
    assignment array (-1 marks an unmatched candidate position)."""
    words = sorted(set(candidate) & set(reference))
    per_word = []
    for word in words:
        c_pos = [i for i, w in enumerate(candidate) if w == word]
        r_pos = [j for j, w in enumerate(reference) if w == word]
        k = min(len(c_pos), len(r_pos))
        choices = []
        for chosen_c in itertools.combinations(c_pos, k):
            for chosen_r in itertools.permutations(r_pos, k):
                choices.append(tuple(zip(chosen_c, chosen_r)))
        per_word.append(choices)
    base = [-1] * len(candidate)
    for combo in itertools.product(*per_word):
        assign = base[:]
        for group in combo:
            for ci, rj in group:
                assign[ci] = rj
        yield assign


def _count_chunks(assign):
    chunks = 0
    prev = -2
    for rj in assign:
        if rj >= 0:
            if rj != prev + 1:
                chunks += 1
            prev = rj
        else:
            prev = -2
    return chunks


def oracle_meteor(candidate, reference):
    """METEOR by enumerating every maximum alignment for the chunk count."""
    candidate = list(candidate)
    reference = list(reference)
    if not candidate or not reference:
        return 0.0
    m = 0
    for word in set(candidate):
        m += min(candidate.count(word), reference.count(word))
    if m == 0:
        return 0.0
    chunks = min(_count_chunks(a) for a in _all_max_alignments(candidate, reference))
    p = m / len(candidate)
    r = m / len(reference)
    fmean = 10.0 * p * r / (r + 9.0 * p)
    return fmean * (1.0 - 0.5 * (chunks / m) ** 3)


def unionfind_is_tree(tree):
    """Independent tree check: union-find over head links plus one-root test."""
    ids = [tok.id for tok in tree.tokens]
    parent = {i: i for i in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    roots = 0
    for tok in tree.tokens:
        if tok.head == 0:
            roots += 1
            continue
        if tok.head not in parent:
            return False
        a, b = find(tok.id), find(tok.head)
        if a == b:
            return False  # undirected cycle
        parent[a] = b
    if roots != 1:
        return False
    return len({find(i) for i in ids}) == 1
