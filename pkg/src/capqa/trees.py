"""Dependency-tree data types shared by the whole pipeline.

A caption is a rooted ordered dependency tree over 1-based token ids.
Trees are immutable once built; every transformation returns a new tree.
"""

import re
from dataclasses import dataclass, replace

from .errors import TreeError

NER_TAG_RE = re.compile(r"^(O|[BI]-[A-Z]+)$")


@dataclass(frozen=True)
class DepToken:
    """One token of a parsed caption.

    head is 0 for the root, otherwise the 1-based id of the parent token.
    ner carries a BIO named-entity tag ("O", "B-PERSON", "I-GPE", ...).
    xpos/feats/deps/misc keep the raw CoNLL-U columns for round-tripping.
    """

    id: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str
    ner: str = "O"
    xpos: str = "_"
    feats: str = "_"
    deps: str = "_"
    misc: str = "_"


@dataclass(frozen=True)
class DepTree:
    """A parsed caption: ordered tokens plus sentence/image identifiers.

    comments preserves the raw comment lines of the source block so that
    serialization round-trips.  front_children is only populated by the
    question-side reconstruction: (parent_id, child_id) pairs whose child
    is emitted before everything else under that parent.
    """

    tokens: tuple
    sentence_id: str = ""
    image_id: str = ""
    comments: tuple = ()
    front_children: tuple = ()

    def __len__(self):
        return len(self.tokens)

    @property
    def root(self):
        """Id of the unique token with head 0."""
        for tok in self.tokens:
            if tok.head == 0:
                return tok.id
        raise TreeError("no root token", self.sentence_id)

    def token(self, token_id):
        tok = self.token_map().get(token_id)
        if tok is None:
            raise TreeError(f"no token with id {token_id}", self.sentence_id)
        return tok

    def token_map(self):
        return {tok.id: tok for tok in self.tokens}

    def children_map(self):
        """Map parent id -> child ids in ascending token order."""
        children = {tok.id: [] for tok in self.tokens}
        for tok in self.tokens:
            if tok.head != 0:
                children[tok.head].append(tok.id)
        return children

    def subtree_ids(self, token_id):
        """All token ids in the subtree rooted at token_id (inclusive)."""
        children = self.children_map()
        out = []
        stack = [token_id]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(children[node]))
        return out

    def depth(self, token_id):
        """Number of head links between token_id and the root."""
        tokens = self.token_map()
        depth = 0
        node = token_id
        while tokens[node].head != 0:
            node = tokens[node].head
            depth += 1
            if depth > len(self.tokens):
                raise TreeError("head cycle", self.sentence_id)
        return depth

    def path_from_root(self, token_id):
        """Token ids from the root down to token_id, inclusive."""
        tokens = self.token_map()
        path = [token_id]
        while tokens[path[-1]].head != 0:
            path.append(tokens[path[-1]].head)
            if len(path) > len(self.tokens):
                raise TreeError("head cycle", self.sentence_id)
        path.reverse()
        return path


def validate_tree(tree, contiguous_ids=True):
    """Check the DepTree invariants, raising TreeError on the first failure.

    contiguous_ids=False relaxes the 1..n id check for derived trees
    (reconstruction keeps original ids after pruning).
    """
    sid = tree.sentence_id
    if not tree.tokens:
        raise TreeError("empty tree", sid)
    ids = [tok.id for tok in tree.tokens]
    if len(set(ids)) != len(ids):
        raise TreeError("duplicate token ids", sid)
    if contiguous_ids and ids != list(range(1, len(ids) + 1)):
        raise TreeError("token ids not contiguous from 1", sid)
    id_set = set(ids)
    roots = [tok.id for tok in tree.tokens if tok.head == 0]
    if len(roots) != 1:
        raise TreeError(f"expected exactly one root, found {len(roots)}", sid)
    for tok in tree.tokens:
        if tok.id < 1:
            raise TreeError(f"token id {tok.id} < 1", sid)
        if tok.head < 0:
            raise TreeError(f"token {tok.id} has negative head", sid)
        if tok.head == tok.id:
            raise TreeError(f"token {tok.id} is its own head", sid)
        if tok.head != 0 and tok.head not in id_set:
            raise TreeError(f"token {tok.id} points to missing head {tok.head}", sid)
        if not NER_TAG_RE.match(tok.ner):
            raise TreeError(f"token {tok.id} has invalid NER tag {tok.ner!r}", sid)
    # Reachability from the root covers both cycles and disconnected parts.
    children = tree.children_map()
    seen = set()
    stack = [roots[0]]
    while stack:
        node = stack.pop()
        if node in seen:
            raise TreeError("head links contain a cycle", sid)
        seen.add(node)
        stack.extend(children[node])
    if len(seen) != len(tree.tokens):
        raise TreeError("head links do not form a single tree", sid)
    return tree


def strip_punct(tree):
    """Drop punct-relation tokens, re-attaching any dependents to their head.

    Token ids are kept as-is; the root is never dropped.
    """
    root = tree.root
    drop = {tok.id for tok in tree.tokens if tok.deprel == "punct" and tok.id != root}
    if not drop:
        return tree
    tokens = tree.token_map()

    def surviving_head(head):
        while head in drop:
            head = tokens[head].head
        return head

    kept = tuple(
        replace(tok, head=surviving_head(tok.head))
        for tok in tree.tokens
        if tok.id not in drop
    )
    return replace(tree, tokens=kept)
