"""CoNLL-U parsing and conversion to head-vector treebanks.

Sentences are blank-line delimited; `#` comment lines are ignored; multiword
token lines (`a-b` ids) and empty-node lines (`a.b` ids) are skipped.  Token
lines must have exactly 10 tab-separated columns.  Only ID, UPOS and HEAD are
interpreted; the remaining columns are carried through unchanged.

Preprocessing can drop punctuation and function words (dependents of a
removed token are re-attached to its nearest retained ancestor; a removed
root is replaced by its leftmost retained dependent) and filter sentences by
their post-removal length.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import (
    HeadOutOfRangeError,
    MalformedLineError,
    NonContiguousIdsError,
    TreeValidationError,
)
from .trees import RootedTree

DEFAULT_FUNCTION_WORD_UPOS = frozenset(
    {"ADP", "AUX", "CCONJ", "DET", "PART", "PRON", "SCONJ"})


@dataclass(frozen=True)
class ConlluToken:
    id: int
    form: str
    lemma: str
    upos: str
    xpos: str
    feats: str
    head: int
    deprel: str
    deps: str
    misc: str


@dataclass(frozen=True)
class PreprocessOptions:
    remove_punct: bool = False
    remove_function_words: bool = False
    min_len: Optional[int] = None
    max_len: Optional[int] = None
    function_word_upos: frozenset = DEFAULT_FUNCTION_WORD_UPOS

    def __post_init__(self):
        if (self.min_len is not None and self.max_len is not None
                and self.min_len > self.max_len):
            raise ValueError("min_len must not exceed max_len")


@dataclass
class ConversionReport:
    converted: int = 0
    filtered: int = 0
    errored: list[tuple[int, str]] = field(default_factory=list)
    elapsed: float = 0.0
    output_path: Optional[str] = None


def _parse_token(line: str, line_no: int) -> Optional[ConlluToken]:
    cols = line.split("\t")
    if len(cols) != 10:
        raise MalformedLineError(
            f"expected 10 tab-separated columns, got {len(cols)} on line {line_no}",
            line_no)
    tok_id = cols[0]
    if "-" in tok_id or "." in tok_id:
        return None  # multiword-token range or empty node
    try:
        idx = int(tok_id)
        head = int(cols[6])
    except ValueError:
        raise MalformedLineError(
            f"non-integer ID or HEAD on line {line_no}", line_no) from None
    return ConlluToken(idx, cols[1], cols[2], cols[3], cols[4], cols[5],
                       head, cols[7], cols[8], cols[9])


def _validate_sentence(tokens: list[ConlluToken], first_line: int) -> None:
    n = len(tokens)
    if [t.id for t in tokens] != list(range(1, n + 1)):
        raise NonContiguousIdsError(
            f"token ids not contiguous 1..{n} in sentence starting at line {first_line}",
            first_line)
    for t in tokens:
        if not (0 <= t.head <= n):
            raise HeadOutOfRangeError(
                f"head {t.head} of token {t.id} out of range 0..{n} "
                f"in sentence starting at line {first_line}", first_line)


def _iter_records(path: str) -> Iterator[tuple[int, Optional[list[ConlluToken]], Optional[Exception]]]:
    """Yield (first_line_no, tokens, error) per sentence; errors do not stop the stream."""
    tokens: list[ConlluToken] = []
    first_line = 0
    error: Optional[Exception] = None
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                if tokens or error:
                    yield (first_line, None if error else tokens, error)
                tokens, first_line, error = [], 0, None
                continue
            if line.startswith("#"):
                continue
            if error is not None:
                continue  # sentence already failed; consume until blank line
            if not first_line:
                first_line = line_no
            try:
                tok = _parse_token(line, line_no)
            except MalformedLineError as exc:
                error = exc
                continue
            if tok is not None:
                tokens.append(tok)
        if tokens or error:
            yield (first_line, None if error else tokens, error)


def parse_conllu(path: str) -> Iterator[list[ConlluToken]]:
    """Iterate sentences, raising on the first malformed one."""
    for first_line, tokens, error in _iter_records(path):
        if error is not None:
            raise error
        _validate_sentence(tokens, first_line)
        yield tokens


def preprocess(tokens: list[ConlluToken],
               opts: PreprocessOptions) -> Optional[tuple[int, ...]]:
    """Reduce a sentence to a head vector, or None when filtered out."""

    def keep(t: ConlluToken) -> bool:
        if opts.remove_punct and t.upos == "PUNCT":
            return False
        if opts.remove_function_words and t.upos in opts.function_word_upos:
            return False
        return True

    head_of = {t.id: t.head for t in tokens}
    kept = [t for t in tokens if keep(t)]
    if not kept:
        return None
    kept_ids = {t.id for t in kept}

    def effective_head(t: ConlluToken) -> int:
        h = t.head
        steps = 0
        while h != 0 and h not in kept_ids:
            h = head_of[h]
            steps += 1
            if steps > len(tokens):  # head cycle among removed tokens
                raise TreeValidationError("cycle in head chain")
        return h

    eff = {t.id: effective_head(t) for t in kept}
    orphans = [t.id for t in kept if eff[t.id] == 0]
    new_root = min(orphans)  # leftmost retained dependent is promoted
    renumber = {t.id: i for i, t in enumerate(kept, start=1)}
    heads = []
    for t in kept:
        if t.id == new_root:
            heads.append(0)
        elif eff[t.id] == 0:
            heads.append(renumber[new_root])
        else:
            heads.append(renumber[eff[t.id]])
    n = len(heads)
    if opts.min_len is not None and n < opts.min_len:
        return None
    if opts.max_len is not None and n > opts.max_len:
        return None
    RootedTree.from_head_vector(heads)  # structural errors propagate
    return tuple(heads)


def convert(
    input_path: str,
    output_path: str,
    opts: Optional[PreprocessOptions] = None,
    *,
    error_policy: str = "skip_and_report",
) -> ConversionReport:
    """Convert a CoNLL-U file into a head-vector treebank file."""
    if not os.path.exists(input_path):
        raise FileNotFoundError(input_path)
    if opts is None:
        opts = PreprocessOptions()
    started = time.perf_counter()
    report = ConversionReport()
    with open(output_path, "w", encoding="utf-8", newline="") as out:
        for first_line, tokens, error in _iter_records(input_path):
            if error is None:
                try:
                    _validate_sentence(tokens, first_line)
                except MalformedLineError as exc:
                    error = exc
            if error is None:
                try:
                    heads = preprocess(tokens, opts)
                except TreeValidationError as exc:
                    error = exc
            if error is not None:
                if error_policy == "fail_fast":
                    raise error
                report.errored.append((first_line, str(error)))
                continue
            if heads is None:
                report.filtered += 1
                continue
            out.write(" ".join(str(h) for h in heads) + "\n")
            report.converted += 1
    report.elapsed = time.perf_counter() - started
    report.output_path = output_path
    return report
