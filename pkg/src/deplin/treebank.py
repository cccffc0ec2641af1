"""Head-vector treebank reading and CSV feature extraction.

File grammar: one sentence per line, base-10 integers separated by
whitespace, blank lines ignored.  Output CSV: comma separator, LF line
endings, header `sentence_id,n,<features...>`; one row per valid sentence in
input order.  The sentence's own word order (identity arrangement) is used
for arrangement-dependent features.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import features
from .errors import DeplinError, MalformedLineError
from .trees import Arrangement, RootedTree

_POLICIES = ("fail_fast", "skip_and_report")


@dataclass
class SentenceRecord:
    line_no: int
    heads: Optional[tuple[int, ...]]
    tree: Optional[RootedTree]
    error: Optional[str] = None


@dataclass
class ProcessingReport:
    processed: int = 0
    skipped: list[tuple[int, str]] = field(default_factory=list)
    elapsed: float = 0.0
    output_path: Optional[str] = None

    @property
    def total(self) -> int:
        return self.processed + len(self.skipped)


@dataclass
class CollectionReport:
    reports: list[tuple[str, ProcessingReport]] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)


class TreebankSource:
    """Streaming iterator over the sentences of a head-vector file."""

    def __init__(self, path: str, error_policy: str = "fail_fast"):
        if error_policy not in _POLICIES:
            raise ValueError(f"error policy must be one of {_POLICIES}")
        self.path = path
        self.error_policy = error_policy

    def __iter__(self) -> Iterator[SentenceRecord]:
        with open(self.path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    heads = tuple(int(tok) for tok in line.split())
                except ValueError:
                    err: Exception = MalformedLineError(
                        f"non-integer token on line {line_no}", line_no)
                    if self.error_policy == "fail_fast":
                        raise err
                    yield SentenceRecord(line_no, None, None, str(err))
                    continue
                try:
                    tree = RootedTree.from_head_vector(heads)
                except DeplinError as exc:
                    if self.error_policy == "fail_fast":
                        raise
                    yield SentenceRecord(line_no, heads, None,
                                         f"{type(exc).__name__}: {exc}")
                    continue
                yield SentenceRecord(line_no, heads, tree)


def read_head_vectors(path: str, error_policy: str = "fail_fast") -> TreebankSource:
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    return TreebankSource(path, error_policy)


def render_value(value, exact: bool = False) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if exact:
            return str(value)  # "p/q", or "p" when integral
        return f"{float(value):.6f}"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _row_for_sentence(args) -> str:
    sentence_id, heads, names, exact = args
    tree = RootedTree.from_head_vector(heads)
    ctx = features.FeatureContext(tree, Arrangement.identity(tree.n))
    cells = [str(sentence_id), str(tree.n)]
    for feat in features.resolve(names):
        cells.append(render_value(feat.func(ctx), exact))
    return ",".join(cells)


def _normalized_features(feature_names: Optional[Sequence[str]]) -> list[str]:
    if feature_names is None:
        names = features.default_features()
    else:
        names = list(feature_names)
        features.resolve(names)  # validate early
    names = [n for n in names if n != "n"]  # n is always the second column
    if len(set(names)) != len(names):
        raise ValueError("duplicate feature names")
    return names


def _compute_rows(source: TreebankSource, names: list[str], exact: bool,
                  threads: int) -> tuple[list[str], ProcessingReport]:
    report = ProcessingReport()
    tasks = []
    sentence_no = 0
    for rec in source:
        sentence_no += 1
        if rec.error is not None:
            report.skipped.append((rec.line_no, rec.error))
            continue
        tasks.append((sentence_no, rec.heads, names, exact))
    if threads > 1 and len(tasks) > 1:
        import multiprocessing

        with multiprocessing.Pool(threads) as pool:
            rows = list(pool.imap(_row_for_sentence, tasks, chunksize=64))
    else:
        rows = [_row_for_sentence(t) for t in tasks]
    report.processed = len(rows)
    return rows, report


def process_treebank(
    input_path: str,
    output_path: str,
    feature_names: Optional[Sequence[str]] = None,
    *,
    error_policy: str = "skip_and_report",
    exact: bool = False,
    threads: int = 1,
) -> ProcessingReport:
    """Compute the requested features for every sentence into a CSV file."""
    started = time.perf_counter()
    names = _normalized_features(feature_names)
    source = read_head_vectors(input_path, error_policy)
    rows, report = _compute_rows(source, names, exact, threads)
    with open(output_path, "w", encoding="utf-8", newline="") as out:
        out.write(",".join(["sentence_id", "n"] + names) + "\n")
        for row in rows:
            out.write(row + "\n")
    report.elapsed = time.perf_counter() - started
    report.output_path = output_path
    return report


def _collection_members(list_path: str) -> list[str]:
    base = os.path.dirname(os.path.abspath(list_path))
    members = []
    with open(list_path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            members.append(line if os.path.isabs(line) else os.path.join(base, line))
    return members


def process_collection(
    list_path: str,
    output_dir: Optional[str] = None,
    merge_out: Optional[str] = None,
    feature_names: Optional[Sequence[str]] = None,
    *,
    error_policy: str = "skip_and_report",
    exact: bool = False,
    threads: int = 1,
) -> CollectionReport:
    """Process every treebank named in a collection list file.

    With `output_dir`, writes one CSV per member (named after the member's
    basename); with `merge_out`, writes a single CSV with a leading
    `treebank` column holding the member basenames (without extension).
    """
    if (output_dir is None) == (merge_out is None):
        raise ValueError("exactly one of output_dir / merge_out is required")
    if not os.path.exists(list_path):
        raise FileNotFoundError(list_path)
    names = _normalized_features(feature_names)
    collection = CollectionReport()
    merged_rows: list[str] = []
    if output_dir is not None:
        os.makedirs(output_dir, exist_ok=True)
    for member in _collection_members(list_path):
        stem = os.path.splitext(os.path.basename(member))[0]
        if not os.path.exists(member):
            if error_policy == "fail_fast":
                raise FileNotFoundError(member)
            collection.missing.append(member)
            continue
        started = time.perf_counter()
        source = TreebankSource(member, error_policy)
        rows, report = _compute_rows(source, names, exact, threads)
        report.elapsed = time.perf_counter() - started
        if output_dir is not None:
            out_path = os.path.join(output_dir, stem + ".csv")
            with open(out_path, "w", encoding="utf-8", newline="") as out:
                out.write(",".join(["sentence_id", "n"] + names) + "\n")
                for row in rows:
                    out.write(row + "\n")
            report.output_path = out_path
        else:
            merged_rows.extend(f"{stem},{row}" for row in rows)
        collection.reports.append((stem, report))
    if merge_out is not None:
        with open(merge_out, "w", encoding="utf-8", newline="") as out:
            out.write(",".join(["treebank", "sentence_id", "n"] + names) + "\n")
            for row in merged_rows:
                out.write(row + "\n")
        for _, rep in collection.reports:
            rep.output_path = merge_out
    return collection
