"""The recording manifest: one CSV row per (EDF file, signal index) with the
identity, depth, anatomical label and optional crop intervals of that
recording. The manifest is the only carrier of labels and crop decisions;
EDF headers stay format-pure."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from ..edf import Label, Recording, read_edf_file
from ..errors import DataError

MANIFEST_COLUMNS = (
    "edf_file",
    "signal_index",
    "patient_id",
    "hemisphere",
    "trajectory_id",
    "channel_id",
    "depth_mm",
    "label",
    "crop_intervals",
)


@dataclass(frozen=True)
class ManifestEntry:
    edf_file: str
    signal_index: int
    patient_id: str
    hemisphere: str
    trajectory_id: str
    channel_id: str
    depth_mm: float
    label: Label
    crop_intervals: tuple[tuple[float, float], ...] = ()

    @property
    def recording_key(self) -> str:
        return (
            f"{self.patient_id}_{self.hemisphere}_{self.trajectory_id}"
            f"_{self.channel_id}_d{self.depth_mm:g}"
        )


def _parse_intervals(text: str, row: int) -> tuple[tuple[float, float], ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for chunk in text.split(";"):
        parts = chunk.split(":")
        if len(parts) != 2:
            raise DataError(
                f"manifest row {row}: bad crop interval {chunk!r} (want start:end)"
            )
        try:
            out.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise DataError(f"manifest row {row}: non-numeric crop interval {chunk!r}")
    return tuple(out)


def _format_intervals(intervals) -> str:
    return ";".join(f"{a:g}:{b:g}" for a, b in intervals)


def read_manifest(path) -> list[ManifestEntry]:
    path = Path(path)
    if not path.exists():
        raise DataError(f"manifest file {path} does not exist")
    entries = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(MANIFEST_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise DataError(f"manifest {path} missing columns: {sorted(missing)}")
        for row_num, row in enumerate(reader, start=2):
            try:
                entries.append(
                    ManifestEntry(
                        edf_file=row["edf_file"],
                        signal_index=int(row["signal_index"]),
                        patient_id=row["patient_id"],
                        hemisphere=row["hemisphere"],
                        trajectory_id=row["trajectory_id"],
                        channel_id=row["channel_id"],
                        depth_mm=float(row["depth_mm"]),
                        label=Label.from_string(row["label"]),
                        crop_intervals=_parse_intervals(row["crop_intervals"], row_num),
                    )
                )
            except (ValueError, KeyError) as exc:
                if isinstance(exc, DataError):
                    raise
                raise DataError(f"manifest row {row_num}: {exc}")
    if not entries:
        raise DataError(f"manifest {path} has no entries")
    return entries


def write_manifest(path, entries) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MANIFEST_COLUMNS)
        for e in entries:
            writer.writerow(
                [
                    e.edf_file,
                    e.signal_index,
                    e.patient_id,
                    e.hemisphere,
                    e.trajectory_id,
                    e.channel_id,
                    f"{e.depth_mm:g}",
                    e.label.value,
                    _format_intervals(e.crop_intervals),
                ]
            )


def load_recording(entry: ManifestEntry, base_dir) -> Recording:
    """Read one manifest entry's signal from its EDF file."""
    path = Path(base_dir) / entry.edf_file
    if not path.exists():
        raise DataError(f"EDF file {path} referenced by manifest does not exist")
    header, signals = read_edf_file(path)
    if not 0 <= entry.signal_index < len(signals):
        raise DataError(
            f"manifest entry {entry.recording_key}: signal index "
            f"{entry.signal_index} out of range for {path} ({len(signals)} signals)"
        )
    sig = header.signals[entry.signal_index]
    fs = sig.samples_per_record / header.record_duration_s
    return Recording(
        samples=signals[entry.signal_index],
        fs=fs,
        patient_id=entry.patient_id,
        hemisphere=entry.hemisphere,
        trajectory_id=entry.trajectory_id,
        channel_id=entry.channel_id,
        depth_mm=entry.depth_mm,
        label=entry.label,
    )
