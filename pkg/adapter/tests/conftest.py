import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from sample_data import CAPTIONS, DETECTIONS, tiny_png


@pytest.fixture
def sample_dirs(tmp_path):
    """5-image/10-caption sample: captions JSON, image dir with manifest."""
    captions_path = tmp_path / "captions.json"
    captions_path.write_text(json.dumps(CAPTIONS), encoding="utf-8")
    image_dir = tmp_path / "images"
    image_dir.mkdir()
    png = tiny_png()
    for image in CAPTIONS["images"]:
        (image_dir / image["file_name"]).write_bytes(png)
    (image_dir / "detections.json").write_text(json.dumps(DETECTIONS), encoding="utf-8")
    return captions_path, image_dir
