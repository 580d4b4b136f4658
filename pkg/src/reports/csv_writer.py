"""
FRANEL CSV Reports
Every interchange file is a CSV: '#' provenance comments, a header row,
then rows with shortest round-trip floats. Files are written atomically.
"""

import csv
import io
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from config import FRANELConfig
from src.asymptotics.bound import BoundCheck
from src.asymptotics.params import AsymptoticParams
from src.detection.bumps import Bump
from src.errors import InvalidArgumentError
from src.fitting.table import FitTableRow
from src.profile.franel import DenominatorProfile, DeviationTerm

logger = logging.getLogger(__name__)

PROFILE_HEADER = ["k", "p_value", "term_count"]
TERMS_HEADER = ["i", "num", "den", "deviation", "squared"]
HULL_HEADER = ["k", "p_value"]
BUMPS_HEADER = ["k_peak", "j", "distance", "prominence"]
FIT_HEADER = ["m", "a", "b", "k_star", "p_at_m", "p_at_kstar"]
TABLE_HEADER = ["set", "s", "t", "u", "v"]
RESIDUALS_HEADER = ["m", "a", "a_model", "a_residual", "b", "b_model", "b_residual"]
RATIO_HEADER = ["x", "ratio"]
BOUND_HEADER = ["m", "r", "rtilde", "satisfied"]
ENVELOPE_HEADER = ["k", "p_value", "is_prime", "envelope"]


def format_value(value: Any) -> str:
    """Shortest round-trip text for floats, plain text otherwise"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def provenance(**fields: Any) -> List[str]:
    """Header comment lines: tool/version first, then the given fields in order"""
    items = dict(FRANELConfig.to_dict())
    items.update(fields)
    return [f"{key}={format_value(value)}" for key, value in items.items()]


def render_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    comments: Optional[Sequence[str]] = None
) -> str:
    buffer = io.StringIO()
    for comment in comments or []:
        buffer.write(f"# {comment}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def atomic_write_text(path: Path, text: str) -> Path:
    """
    Write via a temporary file in the target directory, then rename

    Raises:
        OSError: naming the path that could not be written
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
    except OSError as e:
        raise OSError(e.errno, f"Cannot write output file: {e.strerror}", str(path)) from e

    logger.debug("Wrote %s", path)
    return path


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    comments: Optional[Sequence[str]] = None
) -> Path:
    return atomic_write_text(path, render_csv(header, rows, comments))


def read_csv(path: Path) -> Tuple[List[str], List[Dict[str, str]]]:
    """
    Parse a FRANEL CSV

    Returns:
        (comment lines without '# ', rows as header -> text dicts)
    """
    comments = []
    body = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        for line in f:
            if line.startswith("#"):
                comments.append(line[1:].strip())
            else:
                body.append(line)
    return comments, list(csv.DictReader(body))


def write_profile_csv(path: Path, profile: DenominatorProfile) -> Path:
    return write_csv(
        path,
        PROFILE_HEADER,
        profile.items(),
        provenance(m=profile.m, n=profile.n, convention=profile.convention.value,
                   r_total=profile.r_total)
    )


def write_terms_csv(
    path: Path,
    terms: Iterable[DeviationTerm],
    m: int,
    convention: str
) -> Path:
    rows = (
        (term.i, term.fraction.num, term.fraction.den, term.deviation, term.squared)
        for term in terms
    )
    return write_csv(path, TERMS_HEADER, rows, provenance(m=m, convention=convention))


def write_hull_csv(
    path: Path,
    hull: Sequence[Tuple[int, float]],
    profile: DenominatorProfile
) -> Path:
    return write_csv(
        path, HULL_HEADER, hull,
        provenance(m=profile.m, convention=profile.convention.value)
    )


def write_bumps_csv(path: Path, bumps: Sequence[Bump], profile: DenominatorProfile) -> Path:
    rows = ((b.k_peak, b.j, b.distance, b.prominence) for b in bumps)
    return write_csv(
        path, BUMPS_HEADER, rows,
        provenance(m=profile.m, convention=profile.convention.value,
                   min_relative_prominence=FRANELConfig.BUMP_MIN_RELATIVE_PROMINENCE)
    )


def write_fit_csv(path: Path, row: FitTableRow) -> Path:
    rows = (
        (fit.m, fit.a, fit.b, fit.k_star, fit.anchor_hi[1], fit.anchor_lo[1])
        for fit in row.fits
    )
    return write_csv(
        path, FIT_HEADER, rows,
        provenance(set=row.label, convention=row.convention.value)
    )


def write_table_csv(path: Path, rows: Sequence[FitTableRow], convention: str) -> Path:
    return write_csv(
        path,
        TABLE_HEADER,
        ((row.label, row.s, row.t, row.u, row.v) for row in rows),
        provenance(convention=convention)
    )


def write_residuals_csv(path: Path, row: FitTableRow, space: str = "log") -> Path:
    """
    Per-m a_m, b_m with model values and residuals

    Args:
        space: 'log' for ln|value| - ln|model|, 'direct' for value - model
    """
    if space == "log":
        a_res, b_res = row.a_model.residuals, row.b_model.residuals
    elif space == "direct":
        a_res, b_res = row.a_model.direct_residuals(), row.b_model.direct_residuals()
    else:
        raise InvalidArgumentError(f"Residual space must be 'log' or 'direct', got {space!r}")

    rows = (
        (fit.m, fit.a, float(row.a_model(fit.m)), ra, fit.b, float(row.b_model(fit.m)), rb)
        for fit, ra, rb in zip(row.fits, a_res, b_res)
    )
    return write_csv(
        path, RESIDUALS_HEADER, rows,
        provenance(set=row.label, convention=row.convention.value, residuals=space)
    )


def write_ratio_csv(
    path: Path,
    series: Sequence[Tuple[float, float]],
    params: AsymptoticParams
) -> Path:
    return write_csv(
        path, RATIO_HEADER, series,
        provenance(s=params.s, t=params.t, u=params.u, v=params.v, epsilon=params.epsilon)
    )


def write_bound_csv(
    path: Path,
    checks: Sequence[BoundCheck],
    params: AsymptoticParams,
    convention: str
) -> Path:
    rows = ((c.m, c.r, c.rtilde, c.satisfied) for c in checks)
    return write_csv(
        path, BOUND_HEADER, rows,
        provenance(convention=convention, s=params.s, t=params.t, u=params.u, v=params.v)
    )


def write_envelope_csv(
    path: Path,
    series: Sequence[Tuple[int, float, bool, float]],
    profile: DenominatorProfile,
    params: AsymptoticParams
) -> Path:
    return write_csv(
        path, ENVELOPE_HEADER, series,
        provenance(m=profile.m, convention=profile.convention.value,
                   s=params.s, t=params.t, u=params.u, v=params.v)
    )


def load_params_from_table(
    path: Path,
    label: str,
    epsilon: float = FRANELConfig.REFERENCE_EPSILON
) -> AsymptoticParams:
    """
    AsymptoticParams from one row of a table CSV (``set,s,t,u,v``)

    Raises:
        InvalidArgumentError: the row is absent or malformed
    """
    _, rows = read_csv(path)
    for row in rows:
        if row.get("set", "").strip() == label:
            try:
                return AsymptoticParams(
                    s=float(row["s"]), t=float(row["t"]),
                    u=float(row["u"]), v=float(row["v"]),
                    epsilon=epsilon
                )
            except (KeyError, ValueError) as e:
                raise InvalidArgumentError(f"Malformed row {label!r} in {path}: {e}") from e

    raise InvalidArgumentError(f"Row {label!r} not found in {path}")
