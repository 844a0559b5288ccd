"""Seeded random generators for trees and image records used by tests.

Trees are always projective: the traversal identity that anchors the
question-side tests holds exactly for projective dependency trees, and
the generators here never produce a crossing arc.
"""

from capqa.records import DetectedObject, ImageRecord
from capqa.trees import DepToken, DepTree

NOUNS = ["frisbee", "dog", "table", "river", "person", "kite", "ball",
         "tree", "house", "car", "bird", "apple", "boat", "sign"]
VERBS = ["runs", "sits", "plays", "holds", "sees", "crosses"]
ADJS = ["red", "small", "tall", "old", "warm"]
DETS = ["a", "the"]
NUMS = ["two", "three", "five", "nine"]
ADVS = ["quickly", "together", "outside"]
PLACES = ["paris", "greenwich", "harbor"]

NOUN_RELS = ["nsubj", "obj", "obl", "nmod", "compound"]


def random_structure(rng, n):
    """Random projective head assignment for tokens 1..n."""
    heads = [0] * (n + 1)

    def build(lo, hi):
        root = rng.randint(lo, hi)
        attach(lo, root - 1, root)
        attach(root + 1, hi, root)
        return root

    def attach(lo, hi, parent):
        start = lo
        while start <= hi:
            end = rng.randint(start, hi)
            heads[build(start, end)] = parent
            start = end + 1

    heads[build(1, n)] = 0
    return heads[1:]


def random_tree(rng, n, sentence_id="synth", image_id="img-synth"):
    """A bare random projective tree with placeholder word forms."""
    heads = random_structure(rng, n)
    tokens = []
    for i, head in enumerate(heads, start=1):
        form = f"w{i}"
        tokens.append(
            DepToken(id=i, form=form, lemma=form, upos="NOUN",
                     head=head, deprel="root" if head == 0 else "dep")
        )
    return DepTree(tokens=tuple(tokens), sentence_id=sentence_id, image_id=image_id)


def random_caption_tree(rng, sentence_id, image_id):
    """A random projective tree with caption-like annotations."""
    n = rng.randint(3, 12)
    heads = random_structure(rng, n)
    root_id = heads.index(0) + 1
    tokens = []
    for i, head in enumerate(heads, start=1):
        if i == root_id:
            form = rng.choice(VERBS)
            tokens.append(DepToken(id=i, form=form, lemma=form.rstrip("s"),
                                   upos="VERB", head=0, deprel="root"))
            continue
        roll = rng.random()
        if roll < 0.40:
            form = rng.choice(NOUNS)
            lemma, upos, deprel, ner = form, "NOUN", rng.choice(NOUN_RELS), "O"
        elif roll < 0.55:
            form = rng.choice(DETS)
            lemma, upos, deprel, ner = form, "DET", "det", "O"
        elif roll < 0.70:
            form = rng.choice(ADJS)
            lemma, upos, deprel, ner = form, "ADJ", "amod", "O"
        elif roll < 0.80:
            form = rng.choice(NUMS)
            lemma, upos, deprel = form, "NUM", "nummod"
            ner = "B-CARDINAL" if rng.random() < 0.8 else "O"
        elif roll < 0.90:
            form = rng.choice(PLACES)
            lemma, upos, deprel = form, "PROPN", "nmod"
            ner = "B-GPE" if rng.random() < 0.7 else "O"
        else:
            form = rng.choice(ADVS)
            lemma, upos, deprel, ner = form, "ADV", "advmod", "O"
        tokens.append(DepToken(id=i, form=form, lemma=lemma, upos=upos,
                               head=head, deprel=deprel, ner=ner))
    return DepTree(tokens=tuple(tokens), sentence_id=sentence_id, image_id=image_id)


def random_record(rng, index):
    """A random ImageRecord with 1-3 captions and 0-3 detections."""
    image_id = f"synth-img-{index}"
    captions = tuple(
        random_caption_tree(rng, f"synth-{index}-{j}", image_id)
        for j in range(rng.randint(1, 3))
    )
    labels = rng.sample(NOUNS + ["hydrant", "bench"], k=rng.randint(0, 3))
    objects = tuple(
        DetectedObject(label=label, score=round(rng.uniform(0.1, 1.0), 2))
        for label in labels
    )
    return ImageRecord(image_id=image_id, objects=objects, captions=captions)
