"""Batch report rendering: delimited summary plus matplotlib figures."""
from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .punctuation import NONE_LABEL_ID

SUMMARY_CSV = "summary.csv"
STATUS_FIGURE = "batch_status.png"
LABEL_FIGURE = "label_distribution.png"
ENTITY_FIGURE = "entity_types.png"


def write_summary_csv(out_dir: Path, files: list[dict]) -> Path:
    path = out_dir / SUMMARY_CSV
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["input", "status", "error"])
        for item in files:
            writer.writerow([item["input"], item["status"], item.get("error", "")])
    return path


def _bar(ax, counts: Counter, title: str) -> None:
    keys = sorted(counts)
    ax.bar(range(len(keys)), [counts[k] for k in keys], color="#4c72b0")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=45, ha="right", fontsize=8)
    ax.set_title(title)
    ax.set_ylabel("count")


def write_figures(out_dir: Path, files: list[dict], documents: list[dict]) -> list[Path]:
    """Render status/label/entity distribution figures next to the outputs."""
    written: list[Path] = []

    status_counts = Counter(item["status"] for item in files)
    fig, ax = plt.subplots(figsize=(4, 3))
    _bar(ax, status_counts, "Batch file status")
    fig.tight_layout()
    path = out_dir / STATUS_FIGURE
    fig.savefig(path)
    plt.close(fig)
    written.append(path)

    label_counts: Counter = Counter()
    entity_counts: Counter = Counter()
    for doc in documents:
        results = doc.get("results", {})
        for label in results.get("punctuate", {}).get("labels", []):
            if label != NONE_LABEL_ID:
                label_counts[label] += 1
        for span in results.get("ner", {}).get("spans", []):
            entity_counts[span["type"]] += 1

    if label_counts:
        fig, ax = plt.subplots(figsize=(6, 3.5))
        _bar(ax, label_counts, "Predicted punctuation labels")
        fig.tight_layout()
        path = out_dir / LABEL_FIGURE
        fig.savefig(path)
        plt.close(fig)
        written.append(path)

    if entity_counts:
        fig, ax = plt.subplots(figsize=(4, 3))
        _bar(ax, entity_counts, "Predicted entity types")
        fig.tight_layout()
        path = out_dir / ENTITY_FIGURE
        fig.savefig(path)
        plt.close(fig)
        written.append(path)

    return written
