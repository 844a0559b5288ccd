"""Export steps: captions to CoNLL-U, images to detections JSONL.

Output formats follow the question-generation pipeline's input contract:
10-column CoNLL-U with `# sent_id =` / `# image_id =` comments and the
NER tag in MISC, and JSONL lines of {"image_id", "objects"}.
"""

import json
import logging
import os

logger = logging.getLogger("capqa_adapter")

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".gif", ".bmp")


def read_mscoco_captions(path):
    """Read an MSCOCO-style captions JSON into [(sent_id, image_id, text)].

    Entries keep annotation file order; sent_id is `ann<annotation id>`
    (or a running index when ids are missing).
    """
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    if "annotations" not in payload:
        raise ValueError(f"{path}: missing 'annotations' key")
    captions = []
    for i, ann in enumerate(payload["annotations"]):
        if "image_id" not in ann or "caption" not in ann:
            raise ValueError(f"{path}: annotation {i} missing 'image_id' or 'caption'")
        sent_id = f"ann{ann.get('id', i)}"
        captions.append((sent_id, str(ann["image_id"]), str(ann["caption"])))
    return captions


def _token_line(i, tok):
    misc = f"NER={tok['ner']}" if tok["ner"] != "O" else "_"
    return "\t".join([
        str(i), tok["form"], tok["lemma"], tok["upos"], "_", "_",
        str(tok["head"]), tok["deprel"], "_", misc,
    ])


def export_parses(cfg, annotator):
    """Annotate every caption and write one CoNLL-U block per caption.

    Captions the annotator cannot handle are logged and skipped; the
    number of exported blocks is returned.
    """
    captions = read_mscoco_captions(cfg.caption_source)
    blocks = []
    for sent_id, image_id, text in captions:
        try:
            tokens = annotator.annotate(text)
        except Exception as exc:
            logger.warning("skipping caption %s: %s", sent_id, exc)
            continue
        if not tokens:
            logger.warning("skipping caption %s: no tokens", sent_id)
            continue
        lines = [f"# sent_id = {sent_id}", f"# image_id = {image_id}"]
        lines.extend(_token_line(i, tok) for i, tok in enumerate(tokens, start=1))
        blocks.append("\n".join(lines))
    with open(cfg.out_conllu, "w", encoding="utf-8", newline="\n") as f:
        if blocks:
            f.write("\n\n".join(blocks) + "\n")
    logger.info("wrote %d caption blocks to %s", len(blocks), cfg.out_conllu)
    return len(blocks)


def _image_id_from_name(name):
    stem = os.path.splitext(name)[0]
    if stem.isdigit():  # MSCOCO zero-padded file names
        return str(int(stem))
    return stem


def export_detections(cfg, detector):
    """Run the detector over every image and write one JSONL line each.

    Detections at or below cfg.detector_threshold are dropped; unreadable
    images are logged and skipped.  Returns the number of lines written.
    """
    names = sorted(
        name
        for name in os.listdir(cfg.image_dir)
        if name.lower().endswith(IMAGE_EXTENSIONS)
    )
    written = 0
    with open(cfg.out_objects, "w", encoding="utf-8", newline="\n") as f:
        for name in names:
            path = os.path.join(cfg.image_dir, name)
            try:
                detections = detector.detect(path)
            except OSError as exc:
                logger.warning("skipping image %s: %s", name, exc)
                continue
            objects = [
                {"label": label.strip().lower(), "score": score}
                for label, score in detections
                if score > cfg.detector_threshold
            ]
            record = {"image_id": _image_id_from_name(name), "objects": objects}
            f.write(json.dumps(record, ensure_ascii=False) + "\n")
            written += 1
    logger.info("wrote %d detection lines to %s", written, cfg.out_objects)
    return written
