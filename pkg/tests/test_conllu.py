import random

import pytest

from capqa.conllu import parse_conllu, parse_conllu_file, to_conllu
from capqa.errors import FormatError, TreeError

from helpers import FIXTURES
from oracles import unionfind_is_tree
from synth import random_tree

HEADER = "# sent_id = s1\n# image_id = i1\n"


def line(i, form, head, deprel="dep", misc="_"):
    return f"{i}\t{form}\t{form}\tNOUN\t_\t_\t{head}\t{deprel}\t_\t{misc}"


def test_minimal_five_token_sentence():
    body = "\n".join(
        [
            line(1, "a", 2),
            line(2, "b", 0, "root"),
            line(3, "c", 2),
            line(4, "d", 3),
            line(5, "e", 2),
        ]
    )
    trees = parse_conllu(HEADER + body + "\n")
    assert len(trees) == 1
    assert len(trees[0].tokens) == 5
    assert trees[0].sentence_id == "s1"
    assert trees[0].image_id == "i1"
    assert trees[0].root == 2


def test_self_loop_head_is_tree_error():
    body = line(1, "a", 2) + "\n" + line(2, "b", 2, "root")
    with pytest.raises(TreeError):
        parse_conllu(HEADER + body + "\n")


def test_two_sentences_split_on_blank_line():
    one = HEADER + line(1, "a", 0, "root")
    two = "# sent_id = s2\n# image_id = i1\n" + line(1, "b", 0, "root")
    trees = parse_conllu(one + "\n\n" + two + "\n")
    assert [t.sentence_id for t in trees] == ["s1", "s2"]


def test_wrong_column_count_names_line_number():
    bad = HEADER + "1\tonly\tthree\n"
    with pytest.raises(FormatError) as err:
        parse_conllu(bad)
    assert err.value.line == 3


def test_multiple_roots_name_sentence_id():
    body = line(1, "a", 0, "root") + "\n" + line(2, "b", 0, "root")
    with pytest.raises(TreeError) as err:
        parse_conllu(HEADER + body + "\n")
    assert err.value.sentence_id == "s1"


def test_cycle_detected():
    body = "\n".join([line(1, "a", 2), line(2, "b", 3), line(3, "c", 2), line(4, "d", 0, "root")])
    with pytest.raises(TreeError):
        parse_conllu(HEADER + body + "\n")


def test_multiword_token_rejected():
    bad = HEADER + "1-2\tdel\tdel\tADP\t_\t_\t0\troot\t_\t_\n"
    with pytest.raises(FormatError):
        parse_conllu(bad)


def test_empty_node_rejected():
    bad = HEADER + "1.1\tnull\tnull\tNOUN\t_\t_\t0\troot\t_\t_\n"
    with pytest.raises(FormatError):
        parse_conllu(bad)


def test_missing_image_id_comment():
    text = "# sent_id = s1\n" + line(1, "a", 0, "root") + "\n"
    with pytest.raises(FormatError):
        parse_conllu(text)


def test_ner_read_from_misc():
    body = line(1, "paris", 0, "root", misc="NER=B-GPE|SpaceAfter=No")
    tree = parse_conllu(HEADER + body + "\n")[0]
    assert tree.tokens[0].ner == "B-GPE"
    assert tree.tokens[0].misc == "NER=B-GPE|SpaceAfter=No"


def test_invalid_ner_tag_rejected():
    body = line(1, "a", 0, "root", misc="NER=b-gpe")
    with pytest.raises(TreeError):
        parse_conllu(HEADER + body + "\n")


def test_unknown_upos_and_deprel_accepted():
    text = HEADER + "1\tblah\tblah\tWEIRDTAG\t_\t_\t0\tmystery:rel\t_\t_\n"
    tree = parse_conllu(text)[0]
    assert tree.tokens[0].upos == "WEIRDTAG"
    assert tree.tokens[0].deprel == "mystery:rel"


def test_fixture_round_trip_is_byte_identical():
    path = FIXTURES / "captions.conllu"
    original = path.read_text(encoding="utf-8")
    trees = parse_conllu_file(path)
    assert to_conllu(trees).rstrip() == original.rstrip()


def test_round_trip_idempotent_on_random_trees():
    rng = random.Random(3)
    trees = [random_tree(rng, rng.randint(1, 10), f"s{i}", "img") for i in range(25)]
    # synthetic trees lack source comments; serialize with the required ones
    from dataclasses import replace

    trees = [
        replace(t, comments=(f"# sent_id = {t.sentence_id}", f"# image_id = {t.image_id}"))
        for t in trees
    ]
    text = to_conllu(trees)
    assert to_conllu(parse_conllu(text)) == text


def test_parsed_trees_pass_unionfind_oracle():
    trees = parse_conllu_file(FIXTURES / "captions.conllu")
    assert len(trees) >= 20
    for tree in trees:
        assert unionfind_is_tree(tree)


def test_random_trees_pass_unionfind_oracle():
    rng = random.Random(4)
    for i in range(100):
        assert unionfind_is_tree(random_tree(rng, rng.randint(1, 12)))
