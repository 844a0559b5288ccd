"""CoNLL-U reading, validation and writing.

Input files use the standard 10 columns (ID FORM LEMMA UPOS XPOS FEATS
HEAD DEPREL DEPS MISC).  Each sentence block carries `# sent_id =` and
`# image_id =` comments, and the NER tag rides in MISC as `NER=<tag>`.
Multiword tokens and empty nodes are rejected.
"""

from .errors import FormatError
from .trees import DepToken, DepTree, validate_tree

N_COLUMNS = 10


def _misc_ner(misc):
    if misc == "_":
        return "O"
    for entry in misc.split("|"):
        if entry.startswith("NER="):
            return entry[4:]
    return "O"


def _parse_token_line(line, lineno, path):
    cols = line.split("\t")
    if len(cols) != N_COLUMNS:
        raise FormatError(
            f"expected {N_COLUMNS} tab-separated columns, got {len(cols)}",
            path=path,
            line=lineno,
        )
    tok_id = cols[0]
    if "-" in tok_id:
        raise FormatError("multiword token ranges are not supported", path=path, line=lineno)
    if "." in tok_id:
        raise FormatError("empty nodes are not supported", path=path, line=lineno)
    if not tok_id.isdigit():
        raise FormatError(f"non-numeric token id {tok_id!r}", path=path, line=lineno)
    if not cols[6].isdigit():
        raise FormatError(f"non-numeric head {cols[6]!r}", path=path, line=lineno)
    return DepToken(
        id=int(tok_id),
        form=cols[1],
        lemma=cols[2],
        upos=cols[3],
        xpos=cols[4],
        feats=cols[5],
        head=int(cols[6]),
        deprel=cols[7],
        deps=cols[8],
        misc=cols[9],
        ner=_misc_ner(cols[9]),
    )


def _build_tree(tokens, comments, start_line, path):
    meta = {}
    for comment in comments:
        body = comment[1:].strip()
        if "=" in body:
            key, value = body.split("=", 1)
            meta[key.strip()] = value.strip()
    sent_id = meta.get("sent_id")
    image_id = meta.get("image_id")
    if sent_id is None:
        raise FormatError("missing `# sent_id =` comment", path=path, line=start_line)
    if image_id is None:
        raise FormatError("missing `# image_id =` comment", path=path, line=start_line)
    tree = DepTree(
        tokens=tuple(tokens),
        sentence_id=sent_id,
        image_id=image_id,
        comments=tuple(comments),
    )
    return validate_tree(tree)


def parse_conllu(text, path=None):
    """Parse CoNLL-U text into a list of validated DepTree, one per block."""
    trees = []
    tokens = []
    comments = []
    start_line = 1
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            if tokens or comments:
                trees.append(_build_tree(tokens, comments, start_line, path))
            tokens = []
            comments = []
            start_line = lineno + 1
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        tokens.append(_parse_token_line(line, lineno, path))
    if tokens or comments:
        trees.append(_build_tree(tokens, comments, start_line, path))
    return trees


def parse_conllu_file(path):
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f.read(), path=str(path))


def token_to_line(tok):
    return "\t".join(
        [
            str(tok.id),
            tok.form,
            tok.lemma,
            tok.upos,
            tok.xpos,
            tok.feats,
            str(tok.head),
            tok.deprel,
            tok.deps,
            tok.misc,
        ]
    )


def to_conllu(trees):
    """Serialize trees back to CoNLL-U text (one blank line between blocks)."""
    blocks = []
    for tree in trees:
        lines = list(tree.comments)
        lines.extend(token_to_line(tok) for tok in tree.tokens)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def write_conllu(trees, path):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(to_conllu(trees))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
