"""
FRANEL Plot Scripts
Self-contained gnuplot scripts next to the CSVs they draw; never read back
"""

import logging
from pathlib import Path
from typing import Dict

from config import FRANELConfig
from src.errors import InvalidArgumentError
from src.reports.csv_writer import atomic_write_text

logger = logging.getLogger(__name__)

_PREAMBLE = """\
# %(app)s %(version)s
set datafile separator ','
set datafile commentschars '#'
set key autotitle columnhead
set terminal pngcairo size 1000,700
set output '%(png)s'
set title '%(title)s'
set grid
"""

TEMPLATES: Dict[str, str] = {
    "terms": """\
set xlabel 'i'
set ylabel '(F_m(i) - i/n)^2'
plot '%(csv)s' using 'i':'squared' with impulses notitle
""",
    "profile": """\
set xlabel 'k'
set ylabel 'P_m(k)'
plot '%(csv)s' using 'k':'p_value' with points pt 7 ps 0.4 notitle
""",
    "hull": """\
set xlabel 'k (prime)'
set ylabel 'P_m(k)'
plot '%(csv)s' using 'k':'p_value' with linespoints pt 7 ps 0.5 notitle
""",
    "fit": """\
set xlabel 'm'
set ylabel 'a_m'
set y2label 'b_m'
set y2tics
plot '%(csv)s' using 'm':'a' with points pt 7 title 'a_m', \\
     '' using 'm':'b' axes x1y2 with points pt 6 title 'b_m'
""",
    "residuals": """\
set multiplot layout 2,1
set xlabel 'm'
set ylabel 'a residual'
plot '%(csv)s' using 'm':'a_residual' with points pt 7 notitle
set ylabel 'b residual'
plot '%(csv)s' using 'm':'b_residual' with points pt 7 notitle
unset multiplot
""",
    "envelope": """\
set xlabel 'k'
set ylabel 'P_m(k)'
set logscale y
plot '%(csv)s' using 'k':'p_value' with points pt 7 ps 0.4 title 'P_m(k)', \\
     '' using 'k':'envelope' with lines lw 2 title 'envelope'
""",
    "ratio": """\
set xlabel 'x'
set ylabel 'R~(x) / x^(-1+eps)'
set logscale xy
set format x '10^{%%L}'
plot '%(csv)s' using 'x':'ratio' with lines lw 2 notitle
""",
}


def render_script(kind: str, csv_name: str, title: str) -> str:
    """
    Script text for one plot kind

    Raises:
        InvalidArgumentError: unknown kind
    """
    if kind not in TEMPLATES:
        raise InvalidArgumentError(
            f"Unknown plot kind {kind!r} (expected one of: {', '.join(sorted(TEMPLATES))})"
        )

    fields = {
        "app": FRANELConfig.APP_NAME,
        "version": FRANELConfig.VERSION,
        "csv": csv_name,
        "png": str(Path(csv_name).with_suffix(".png")),
        "title": title.replace("'", ""),
    }
    return (_PREAMBLE + TEMPLATES[kind]) % fields


def write_script(csv_path: Path, kind: str, title: str) -> Path:
    """Write ``<csv stem>.gp`` beside ``csv_path``, referencing it by name"""
    csv_path = Path(csv_path)
    script_path = csv_path.with_suffix(".gp")
    atomic_write_text(script_path, render_script(kind, csv_path.name, title))
    logger.info("Plot script: %s", script_path)
    return script_path
