import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import FIXTURES


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def captions_path():
    return FIXTURES / "captions.conllu"


@pytest.fixture
def objects_path():
    return FIXTURES / "objects.jsonl"


@pytest.fixture
def golden_path():
    return FIXTURES / "golden_qa.jsonl"


@pytest.fixture
def references_path():
    return FIXTURES / "references.jsonl"


@pytest.fixture
def fixture_records(captions_path, objects_path):
    from capqa.conllu import parse_conllu_file
    from capqa.records import build_image_records, read_objects

    trees = parse_conllu_file(captions_path)
    return build_image_records(trees, read_objects(objects_path))
