"""Object detectors behind one small interface: detect(path) -> [(label, score)].

ManifestDetector replays precomputed detections from a JSON sidecar and is
the offline/test backend.  TorchvisionDetector runs a real Faster R-CNN
when torch/torchvision (and their pretrained weights) are available.
"""

import json
import os

IMAGE_MAGIC = (b"\x89PNG", b"\xff\xd8\xff", b"GIF8", b"BM", b"RIFF")

# COCO instance classes in detector output order (index 0 is background).
COCO_CLASSES = [
    "__background__", "person", "bicycle", "car", "motorcycle", "airplane",
    "bus", "train", "truck", "boat", "traffic light", "fire hydrant", "N/A",
    "stop sign", "parking meter", "bench", "bird", "cat", "dog", "horse",
    "sheep", "cow", "elephant", "bear", "zebra", "giraffe", "N/A", "backpack",
    "umbrella", "N/A", "N/A", "handbag", "tie", "suitcase", "frisbee", "skis",
    "snowboard", "sports ball", "kite", "baseball bat", "baseball glove",
    "skateboard", "surfboard", "tennis racket", "bottle", "N/A", "wine glass",
    "cup", "fork", "knife", "spoon", "bowl", "banana", "apple", "sandwich",
    "orange", "broccoli", "carrot", "hot dog", "pizza", "donut", "cake",
    "chair", "couch", "potted plant", "bed", "N/A", "dining table", "N/A",
    "N/A", "toilet", "N/A", "tv", "laptop", "mouse", "remote", "keyboard",
    "cell phone", "microwave", "oven", "toaster", "sink", "refrigerator",
    "N/A", "book", "clock", "vase", "scissors", "teddy bear", "hair drier",
    "toothbrush",
]


def check_readable_image(path):
    """Raise OSError when the file cannot be opened or is no known image."""
    with open(path, "rb") as f:
        head = f.read(8)
    if not head.startswith(IMAGE_MAGIC):
        raise OSError(f"{path}: not a recognized image file")


class ManifestDetector:
    """Replays detections from `detections.json` inside the image directory.

    The manifest maps file names to [[label, score], ...]; files without
    an entry yield no detections.
    """

    name = "manifest"

    def __init__(self, image_dir, manifest_name="detections.json"):
        manifest_path = os.path.join(image_dir, manifest_name)
        self.entries = {}
        if os.path.exists(manifest_path):
            with open(manifest_path, encoding="utf-8") as f:
                self.entries = json.load(f)

    def detect(self, path):
        check_readable_image(path)
        return [(label, float(score)) for label, score in self.entries.get(os.path.basename(path), [])]


class TorchvisionDetector:
    """Pretrained Faster R-CNN from torchvision (requires the `vision` extra
    and downloadable weights)."""

    name = "torchvision"

    def __init__(self):
        try:
            import torch
            import torchvision
        except ImportError as exc:
            raise RuntimeError(
                "torch/torchvision are not installed; install the adapter's "
                "`vision` extra or use the manifest detector"
            ) from exc
        self._torch = torch
        self._torchvision = torchvision
        self.model = torchvision.models.detection.fasterrcnn_resnet50_fpn(weights="DEFAULT")
        self.model.eval()

    def detect(self, path):
        check_readable_image(path)
        image = self._torchvision.io.read_image(path).float() / 255.0
        with self._torch.no_grad():
            output = self.model([image])[0]
        detections = []
        for label_idx, score in zip(output["labels"].tolist(), output["scores"].tolist()):
            label = COCO_CLASSES[label_idx] if 0 <= label_idx < len(COCO_CLASSES) else "N/A"
            if label not in ("N/A", "__background__"):
                detections.append((label, float(score)))
        return detections


def get_detector(name, image_dir):
    if name == "manifest":
        return ManifestDetector(image_dir)
    if name == "torchvision":
        return TorchvisionDetector()
    raise ValueError(f"unknown detector {name!r}")
