from pathlib import Path

from capqa.trees import DepToken, DepTree, validate_tree

FIXTURES = Path(__file__).parent / "fixtures"


def make_tree(rows, sentence_id="t1", image_id="img-t", validate=True):
    """Build a DepTree from (form, lemma, upos, head, deprel[, ner]) rows."""
    tokens = []
    for i, row in enumerate(rows, start=1):
        ner = row[5] if len(row) > 5 else "O"
        tokens.append(
            DepToken(id=i, form=row[0], lemma=row[1], upos=row[2],
                     head=row[3], deprel=row[4], ner=ner)
        )
    tree = DepTree(tokens=tuple(tokens), sentence_id=sentence_id, image_id=image_id)
    return validate_tree(tree) if validate else tree
