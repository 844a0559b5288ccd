"""Caption annotators: tokenization, tagging, dependencies and NER.

Two backends.  HeuristicAnnotator is dependency-free and deterministic: a
lexicon tagger plus a flat attachment scheme that always yields a valid
single-rooted tree.  SpacyAnnotator wraps a spacy pipeline when one is
installed and produces real parses.
"""

import re

TOKEN_RE = re.compile(r"[a-z0-9']+|[.,!?;]")

DETS = frozenset({"a", "an", "the", "this", "that", "these", "those", "some", "many", "few"})
ADPS = frozenset({
    "in", "on", "at", "of", "with", "under", "over", "near", "during", "to",
    "for", "by", "from", "above", "behind", "into", "through", "between",
})
AUXES = frozenset({"is", "are", "was", "were", "be", "been", "being", "am"})
CONJS = frozenset({"and", "or", "but"})
PRONS = frozenset({"it", "he", "she", "they", "his", "her", "its", "their", "him", "them"})
ADVS = frozenset({"here", "there", "very", "together", "outside", "inside"})
NUMBER_WORDS = frozenset({
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten", "eleven", "twelve", "twenty", "thirty", "hundred",
})
VERBS = frozenset({
    "run", "runs", "sit", "sits", "play", "plays", "hold", "holds", "stand",
    "stands", "hang", "hangs", "eat", "eats", "walk", "walks", "ride",
    "rides", "throw", "throws", "catch", "catches", "jump", "jumps", "fly",
    "flies", "look", "looks", "wait", "waits", "cross", "crosses", "float",
    "floats", "burn", "burns", "cook", "cooks", "drink", "drinks", "sleep",
    "sleeps", "swim", "swims", "carry", "carries", "wear", "wears",
})
PLACE_NAMES = frozenset({
    "paris", "london", "greenwich", "brooklyn", "chicago", "tokyo", "venice",
})
MONEY_UNITS = frozenset({"dollar", "dollars", "cent", "cents", "euro", "euros"})


def _lemma(form, upos):
    if upos == "NOUN" and form.endswith("s") and not form.endswith("ss") and len(form) > 3:
        return form[:-1]
    if upos == "VERB":
        if form.endswith("ies"):
            return form[:-3] + "y"
        if form.endswith("es") and form[:-2] in VERBS:
            return form[:-2]
        if form.endswith("s") and not form.endswith("ss"):
            return form[:-1]
    return form


def _tag(tok):
    if tok in DETS:
        return "DET"
    if tok in ADPS:
        return "ADP"
    if tok in AUXES:
        return "AUX"
    if tok in CONJS:
        return "CCONJ"
    if tok in PRONS:
        return "PRON"
    if tok in NUMBER_WORDS or tok.isdigit():
        return "NUM"
    if tok in ADVS or (tok.endswith("ly") and len(tok) > 4):
        return "ADV"
    if tok in ".,!?;":
        return "PUNCT"
    if tok in PLACE_NAMES:
        return "PROPN"
    if tok in VERBS or (tok.endswith("ing") and len(tok) > 5):
        return "VERB"
    return "NOUN"


class HeuristicAnnotator:
    """Deterministic fallback annotator with a flat attachment scheme.

    Dependency choices are simple: the first verb (else first noun, else
    the first token) is the root, nominal left material attaches to the
    next noun, everything else to the root.  Output is always a valid
    single-rooted tree over contiguous 1-based ids.
    """

    name = "heuristic"

    def annotate(self, text):
        forms = TOKEN_RE.findall(text.lower())
        if not forms:
            return []
        tags = [_tag(f) for f in forms]
        n = len(forms)

        root = next((i for i, t in enumerate(tags) if t == "VERB"), None)
        if root is None:
            root = next((i for i, t in enumerate(tags) if t in ("NOUN", "PROPN")), 0)

        def next_nominal(i):
            for j in range(i + 1, n):
                if tags[j] in ("NOUN", "PROPN"):
                    return j
            return None

        heads = [root] * n
        rels = ["dep"] * n
        seen_subject = False
        for i, tag in enumerate(tags):
            if i == root:
                continue
            if tag == "DET":
                j = next_nominal(i)
                heads[i], rels[i] = (j, "det") if j is not None else (root, "det")
            elif tag == "NUM":
                j = next_nominal(i)
                heads[i], rels[i] = (j, "nummod") if j is not None else (root, "nummod")
            elif tag == "ADP":
                j = next_nominal(i)
                heads[i], rels[i] = (j, "case") if j is not None else (root, "case")
            elif tag == "AUX":
                heads[i], rels[i] = root, "aux"
            elif tag == "ADV":
                heads[i], rels[i] = root, "advmod"
            elif tag == "CCONJ":
                heads[i], rels[i] = root, "cc"
            elif tag == "PUNCT":
                heads[i], rels[i] = root, "punct"
            elif tag == "PRON":
                heads[i], rels[i] = root, ("nsubj" if i < root else "obl")
            else:  # NOUN / PROPN / VERB
                if tag == "VERB":
                    heads[i], rels[i] = root, "conj"
                elif i < root and tags[root] == "VERB":
                    heads[i], rels[i] = root, ("nsubj" if not seen_subject else "nmod")
                    seen_subject = True
                elif i < root:
                    heads[i], rels[i] = root, "compound"
                else:
                    preceded_by_adp = i > 0 and tags[i - 1] == "ADP"
                    heads[i], rels[i] = root, ("obl" if preceded_by_adp else "obj")

        ners = self._ner(forms, tags)
        tokens = []
        for i, form in enumerate(forms):
            tokens.append({
                "form": form,
                "lemma": _lemma(form, tags[i]),
                "upos": tags[i],
                "head": 0 if i == root else heads[i] + 1,
                "deprel": "root" if i == root else rels[i],
                "ner": ners[i],
            })
        return tokens

    def _ner(self, forms, tags):
        ners = ["O"] * len(forms)
        for i, form in enumerate(forms):
            if form in PLACE_NAMES:
                ners[i] = "B-GPE"
            elif tags[i] == "NUM":
                if i + 1 < len(forms) and forms[i + 1] in MONEY_UNITS:
                    ners[i] = "B-MONEY"
                    ners[i + 1] = "I-MONEY"
                else:
                    ners[i] = "B-CARDINAL"
        return ners


class SpacyAnnotator:
    """Annotations from a spacy pipeline (requires the `spacy` extra)."""

    name = "spacy"

    def __init__(self, model="en_core_web_sm"):
        try:
            import spacy
        except ImportError as exc:
            raise RuntimeError(
                "spacy is not installed; install the adapter's `spacy` extra "
                "or use the heuristic annotator"
            ) from exc
        self.nlp = spacy.load(model)

    def annotate(self, text):
        doc = self.nlp(text.strip())
        sents = list(doc.sents)
        if not sents:
            return []
        sent = sents[0]  # one caption, take its first sentence
        offset = sent.start
        tokens = []
        for tok in sent:
            if tok.ent_iob_ in ("B", "I"):
                ner = f"{tok.ent_iob_}-{tok.ent_type_}"
            else:
                ner = "O"
            head = 0 if tok.head is tok else tok.head.i - offset + 1
            tokens.append({
                "form": tok.text,
                "lemma": tok.lemma_,
                "upos": tok.pos_,
                "head": head,
                "deprel": tok.dep_,
                "ner": ner,
            })
        return tokens


def get_annotator(name):
    if name == "heuristic":
        return HeuristicAnnotator()
    if name == "spacy":
        return SpacyAnnotator()
    raise ValueError(f"unknown annotator {name!r}")
