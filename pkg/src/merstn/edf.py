"""Reader/writer for baseline EDF files and the in-memory recording model.

EDF layout: a 256-byte fixed header, then 256 bytes of header per signal,
then data records of 16-bit little-endian two's-complement samples stored
signal-major within each record. Digital values map affinely onto physical
units via the per-signal calibration fields. EDF+ annotations, BDF and
discontinuous records are out of scope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DataError, EdfFormatError

HEADER_FIXED_BYTES = 256
HEADER_PER_SIGNAL_BYTES = 256


class Label(enum.Enum):
    """Anatomical class of a recording (the two classification targets)."""

    INSIDE = "inside"
    OUTSIDE = "outside"

    @classmethod
    def from_string(cls, text: str) -> "Label":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise DataError(f"unknown label {text!r}; expected 'inside' or 'outside'")


@dataclass(frozen=True)
class EdfSignalHeader:
    """Per-signal calibration and bookkeeping block of an EDF header."""

    label: str = ""
    transducer: str = ""
    physical_dim: str = "uV"
    physical_min: float = -1000.0
    physical_max: float = 1000.0
    digital_min: int = -32768
    digital_max: int = 32767
    prefiltering: str = ""
    samples_per_record: int = 0

    def validate(self) -> None:
        if self.digital_min >= self.digital_max:
            raise DataError(
                f"digital_min {self.digital_min} must be < digital_max {self.digital_max}"
            )
        if self.physical_min == self.physical_max:
            raise DataError("physical_min and physical_max must differ")
        if self.samples_per_record <= 0:
            raise DataError("samples_per_record must be positive")

    @property
    def quantum(self) -> float:
        """Physical size of one digital step."""
        return (self.physical_max - self.physical_min) / (
            self.digital_max - self.digital_min
        )


@dataclass(frozen=True)
class EdfHeader:
    version: str = "0"
    patient_id: str = ""
    recording_id: str = ""
    start_date: str = "01.01.00"
    start_time: str = "00.00.00"
    num_records: int = 0
    record_duration_s: float = 1.0
    signals: tuple[EdfSignalHeader, ...] = field(default_factory=tuple)

    @property
    def num_signals(self) -> int:
        return len(self.signals)

    @property
    def header_bytes(self) -> int:
        return HEADER_FIXED_BYTES + HEADER_PER_SIGNAL_BYTES * self.num_signals

    def validate(self) -> None:
        if self.num_records < 0:
            raise DataError("num_records must be >= 0")
        if self.record_duration_s <= 0:
            raise DataError("record_duration_s must be positive")
        if not self.signals:
            raise DataError("header needs at least one signal")
        for sig in self.signals:
            sig.validate()


@dataclass
class Recording:
    """One depth step of one channel, in physical units (microvolts)."""

    samples: np.ndarray
    fs: float
    patient_id: str = ""
    hemisphere: str = ""
    trajectory_id: str = ""
    channel_id: str = ""
    depth_mm: float = 0.0
    label: Label | None = None

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.fs <= 0:
            raise DataError("sampling rate must be positive")
        if not np.all(np.isfinite(self.samples)):
            raise DataError("recording samples must be finite")

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.fs

    @property
    def key(self) -> str:
        return (
            f"{self.patient_id}_{self.hemisphere}_{self.trajectory_id}"
            f"_{self.channel_id}_d{self.depth_mm:g}"
        )

    def with_samples(self, samples: np.ndarray) -> "Recording":
        out = replace(self)
        out.samples = np.asarray(samples, dtype=np.float64)
        return out


# ---------------------------------------------------------------------------
# parsing


def _ascii_field(data: bytes, offset: int, width: int) -> str:
    raw = data[offset : offset + width]
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise EdfFormatError("non-ASCII bytes in header field", offset)
    return text.rstrip(" ")


def _int_field(data: bytes, offset: int, width: int) -> int:
    text = _ascii_field(data, offset, width).strip(" ")
    try:
        return int(text)
    except ValueError:
        raise EdfFormatError(f"expected integer, got {text!r}", offset)


def _float_field(data: bytes, offset: int, width: int) -> float:
    text = _ascii_field(data, offset, width).strip(" ")
    try:
        value = float(text)
    except ValueError:
        raise EdfFormatError(f"expected number, got {text!r}", offset)
    if not math.isfinite(value):
        raise EdfFormatError(f"non-finite number {text!r}", offset)
    return value


def parse_edf(data: bytes) -> tuple[EdfHeader, list[np.ndarray]]:
    """Parse an EDF byte stream into a header and per-signal physical samples.

    Returns one float64 array per signal, each of length
    num_records * samples_per_record. Raises EdfFormatError (with the byte
    offset of the defect) on truncation, non-numeric ASCII in numeric
    fields, or a header_bytes mismatch.
    """
    if len(data) < HEADER_FIXED_BYTES:
        raise EdfFormatError(
            f"stream of {len(data)} bytes is shorter than the fixed header", len(data)
        )

    version = _ascii_field(data, 0, 8)
    patient_id = _ascii_field(data, 8, 80)
    recording_id = _ascii_field(data, 88, 80)
    start_date = _ascii_field(data, 168, 8)
    start_time = _ascii_field(data, 176, 8)
    header_bytes = _int_field(data, 184, 8)
    num_records = _int_field(data, 236, 8)
    record_duration = _float_field(data, 244, 8)
    num_signals = _int_field(data, 252, 4)

    if num_signals <= 0:
        raise EdfFormatError(f"num_signals must be positive, got {num_signals}", 252)
    expected_header = HEADER_FIXED_BYTES + HEADER_PER_SIGNAL_BYTES * num_signals
    if header_bytes != expected_header:
        raise EdfFormatError(
            f"header_bytes field says {header_bytes}, expected {expected_header} "
            f"for {num_signals} signals",
            184,
        )
    if len(data) < expected_header:
        raise EdfFormatError("stream truncated inside the signal header block", len(data))

    ns = num_signals
    base = HEADER_FIXED_BYTES

    def column(width: int, parse, start: int):
        values = [parse(data, start + i * width, width) for i in range(ns)]
        return values, start + ns * width

    labels, pos = column(16, _ascii_field, base)
    transducers, pos = column(80, _ascii_field, pos)
    physical_dims, pos = column(8, _ascii_field, pos)
    physical_mins, pos = column(8, _float_field, pos)
    physical_maxs, pos = column(8, _float_field, pos)
    digital_mins, pos = column(8, _int_field, pos)
    digital_maxs, pos = column(8, _int_field, pos)
    prefilterings, pos = column(80, _ascii_field, pos)
    samples_per_record, pos = column(8, _int_field, pos)
    pos += ns * 32  # reserved

    signals = tuple(
        EdfSignalHeader(
            label=labels[i],
            transducer=transducers[i],
            physical_dim=physical_dims[i],
            physical_min=physical_mins[i],
            physical_max=physical_maxs[i],
            digital_min=digital_mins[i],
            digital_max=digital_maxs[i],
            prefiltering=prefilterings[i],
            samples_per_record=samples_per_record[i],
        )
        for i in range(ns)
    )
    header = EdfHeader(
        version=version,
        patient_id=patient_id,
        recording_id=recording_id,
        start_date=start_date,
        start_time=start_time,
        num_records=num_records,
        record_duration_s=record_duration,
        signals=signals,
    )
    header.validate()

    record_len = sum(s.samples_per_record for s in signals)
    expected_data = num_records * record_len * 2
    if len(data) != expected_header + expected_data:
        raise EdfFormatError(
            f"data region has {len(data) - expected_header} bytes, "
            f"expected {expected_data}",
            len(data),
        )

    raw = np.frombuffer(data, dtype="<i2", offset=expected_header)
    raw = raw.reshape(num_records, record_len) if num_records else raw.reshape(0, record_len)

    out: list[np.ndarray] = []
    col = 0
    for sig in signals:
        chunk = raw[:, col : col + sig.samples_per_record].reshape(-1).astype(np.float64)
        scale = sig.quantum
        out.append((chunk - sig.digital_min) * scale + sig.physical_min)
        col += sig.samples_per_record
    return header, out


# ---------------------------------------------------------------------------
# writing


def _pad_ascii(text: str, width: int, offset_name: str) -> bytes:
    try:
        raw = text.encode("ascii")
    except UnicodeEncodeError:
        raise DataError(f"{offset_name} must be ASCII, got {text!r}")
    if len(raw) > width:
        raise DataError(f"{offset_name} {text!r} exceeds {width} characters")
    return raw.ljust(width, b" ")


def _pad_number(value, width: int, offset_name: str) -> bytes:
    if isinstance(value, int):
        text = str(value)
    else:
        text = f"{value:.10g}" if value != int(value) else str(int(value))
    return _pad_ascii(text, width, offset_name)


def write_edf(header: EdfHeader, signals: list[np.ndarray]) -> bytes:
    """Serialize physical-unit signals into an EDF byte stream.

    Refuses samples outside [physical_min, physical_max] because
    quantization would clip them. parse_edf(write_edf(h, s)) reproduces the
    header exactly and the samples to within half a physical quantum.
    """
    header.validate()
    if len(signals) != header.num_signals:
        raise DataError(
            f"{len(signals)} signal arrays for {header.num_signals} header signals"
        )
    for sig, arr in zip(header.signals, signals):
        expected = header.num_records * sig.samples_per_record
        if len(arr) != expected:
            raise DataError(
                f"signal {sig.label!r} has {len(arr)} samples, expected {expected} "
                f"({header.num_records} records x {sig.samples_per_record})"
            )

    parts = [
        _pad_ascii(header.version, 8, "version"),
        _pad_ascii(header.patient_id, 80, "patient_id"),
        _pad_ascii(header.recording_id, 80, "recording_id"),
        _pad_ascii(header.start_date, 8, "start_date"),
        _pad_ascii(header.start_time, 8, "start_time"),
        _pad_number(header.header_bytes, 8, "header_bytes"),
        _pad_ascii("", 44, "reserved"),
        _pad_number(header.num_records, 8, "num_records"),
        _pad_number(header.record_duration_s, 8, "record_duration_s"),
        _pad_number(header.num_signals, 4, "num_signals"),
    ]
    for width, name, get in (
        (16, "label", lambda s: _pad_ascii(s.label, 16, "label")),
        (80, "transducer", lambda s: _pad_ascii(s.transducer, 80, "transducer")),
        (8, "physical_dim", lambda s: _pad_ascii(s.physical_dim, 8, "physical_dim")),
        (8, "physical_min", lambda s: _pad_number(s.physical_min, 8, "physical_min")),
        (8, "physical_max", lambda s: _pad_number(s.physical_max, 8, "physical_max")),
        (8, "digital_min", lambda s: _pad_number(s.digital_min, 8, "digital_min")),
        (8, "digital_max", lambda s: _pad_number(s.digital_max, 8, "digital_max")),
        (80, "prefiltering", lambda s: _pad_ascii(s.prefiltering, 80, "prefiltering")),
        (8, "samples", lambda s: _pad_number(s.samples_per_record, 8, "samples")),
        (32, "reserved2", lambda s: b" " * 32),
    ):
        for sig in header.signals:
            parts.append(get(sig))

    digitised: list[np.ndarray] = []
    for sig, arr in zip(header.signals, signals):
        arr = np.asarray(arr, dtype=np.float64)
        if arr.size and (arr.min() < sig.physical_min or arr.max() > sig.physical_max):
            raise DataError(
                f"signal {sig.label!r} has samples outside "
                f"[{sig.physical_min}, {sig.physical_max}]; refusing to clip"
            )
        dig = np.rint((arr - sig.physical_min) / sig.quantum) + sig.digital_min
        dig = np.clip(dig, sig.digital_min, sig.digital_max)
        digitised.append(dig.astype("<i2"))

    record_chunks = []
    for rec in range(header.num_records):
        for sig, dig in zip(header.signals, digitised):
            n = sig.samples_per_record
            record_chunks.append(dig[rec * n : (rec + 1) * n].tobytes())
    return b"".join(parts) + b"".join(record_chunks)


def read_edf_file(path) -> tuple[EdfHeader, list[np.ndarray]]:
    with open(path, "rb") as fh:
        return parse_edf(fh.read())


def write_edf_file(path, header: EdfHeader, signals: list[np.ndarray]) -> None:
    with open(path, "wb") as fh:
        fh.write(write_edf(header, signals))
