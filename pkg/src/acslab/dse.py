"""Design-space exploration: join application accuracy with per-adder
hardware cost records, compute Pareto fronts, filter against budgets and
report savings against a baseline adder.

Dominance works on a uniform minimize-triple (ber or -accuracy_pct, area,
power). Corrupt-flagged points never enter a Pareto front but do stay in
reports and participate in budget filtering (a corrupt design can sit
inside a power budget; it just cannot satisfy any accuracy criterion).
"""

import csv
import json
import logging
from dataclasses import dataclass

import numpy as np

from .errors import ExplorationError, InputError

log = logging.getLogger(__name__)

METRIC_BER = "ber"
METRIC_ACCURACY = "accuracy_pct"


@dataclass(frozen=True)
class CostRecord:
    adder: str
    width: int
    area_um2: float
    power_uW: float
    mae_pct: float = None
    ep_pct: float = None


@dataclass(frozen=True)
class DesignPoint:
    adder: str
    metric: str          # METRIC_BER (minimize) or METRIC_ACCURACY (maximize)
    value: float
    area_um2: float
    power_uW: float
    corrupt: bool = False

    def objective(self):
        """Uniform minimize-triple."""
        acc = self.value if self.metric == METRIC_BER else -self.value
        return (acc, self.area_um2, self.power_uW)


def load_costs(path):
    """Parse a cost CSV `adder,width,area_um2,power_uW[,mae_pct,ep_pct]`.

    Rejects duplicate adder names, missing columns and non-numeric cells,
    reporting the offending row number.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"adder", "width", "area_um2", "power_uW"}
        missing = required - set(reader.fieldnames or [])
        if missing:
            raise InputError(f"cost file missing columns: {sorted(missing)}")
        records = []
        seen = set()
        for rowno, row in enumerate(reader, start=2):
            name = (row["adder"] or "").strip()
            if not name:
                raise InputError(f"row {rowno}: empty adder name")
            if name in seen:
                raise InputError(f"row {rowno}: duplicate adder '{name}'")
            seen.add(name)
            try:
                rec = CostRecord(
                    adder=name,
                    width=int(row["width"]),
                    area_um2=float(row["area_um2"]),
                    power_uW=float(row["power_uW"]),
                    mae_pct=float(row["mae_pct"]) if row.get("mae_pct") else None,
                    ep_pct=float(row["ep_pct"]) if row.get("ep_pct") else None,
                )
            except ValueError as exc:
                raise InputError(f"row {rowno}: non-numeric cell ({exc})") from exc
            if rec.area_um2 <= 0 or rec.power_uW <= 0:
                raise InputError(f"row {rowno}: area and power must be positive")
            records.append(rec)
    return records


@dataclass(frozen=True)
class AccuracyRow:
    adder: str
    metric: str
    value: float
    corrupt: bool = False


def load_accuracy(path, metric=None, modulation=None):
    """Read an accuracy table into one AccuracyRow per adder.

    Accepts tagging tables (adder,accuracy_pct,...) and BER tables
    (adder,[modulation,][snr_db,]ber,...). BER rows are optionally
    filtered by modulation and averaged per adder across the remaining
    rows; a corrupt flag on any contributing row marks the adder corrupt.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        cols = set(reader.fieldnames or [])
        if METRIC_ACCURACY in cols:
            detected = METRIC_ACCURACY
        elif METRIC_BER in cols:
            detected = METRIC_BER
        else:
            raise InputError(
                "accuracy file needs an 'accuracy_pct' or 'ber' column")
        if metric and metric != detected:
            raise InputError(
                f"requested metric '{metric}' but file carries '{detected}'")
        acc = {}
        order = []
        for rowno, row in enumerate(reader, start=2):
            name = (row["adder"] or "").strip()
            if not name:
                raise InputError(f"row {rowno}: empty adder name")
            if modulation and row.get("modulation") not in (None, modulation):
                continue
            try:
                value = float(row[detected])
            except ValueError as exc:
                raise InputError(f"row {rowno}: non-numeric cell ({exc})") from exc
            corrupt = (row.get("corrupt_flag") or "0").strip() in ("1", "true", "True")
            if name not in acc:
                acc[name] = []
                order.append(name)
            acc[name].append((value, corrupt))
    rows = []
    for name in order:
        vals = acc[name]
        mean = sum(v for v, _ in vals) / len(vals)
        rows.append(AccuracyRow(name, detected, mean,
                                corrupt=any(c for _, c in vals)))
    return rows


def join_points(accuracy_rows, costs):
    """Inner join on adder name; accuracy rows without a cost record are
    skipped with a warning. Raises ExplorationError on an empty join or
    mixed accuracy metrics."""
    metrics = {r.metric for r in accuracy_rows}
    if len(metrics) > 1:
        raise ExplorationError(f"mixed accuracy metrics: {sorted(metrics)}")
    by_name = {c.adder: c for c in costs}
    points = []
    skipped = []
    for row in accuracy_rows:
        cost = by_name.get(row.adder)
        if cost is None:
            skipped.append(row.adder)
            continue
        points.append(DesignPoint(row.adder, row.metric, row.value,
                                  cost.area_um2, cost.power_uW, row.corrupt))
    if skipped:
        log.warning("no cost record for %d adder(s), skipped: %s",
                    len(skipped), ", ".join(skipped))
    if not points:
        raise ExplorationError("accuracy/cost join is empty")
    return points


def dominates(p, q):
    po, qo = p.objective(), q.objective()
    return all(a <= b for a, b in zip(po, qo)) and any(a < b for a, b in zip(po, qo))


def pareto_front(points):
    """Non-dominated subset (corrupt points excluded). Points with
    identical objective vectors are all retained."""
    pool = [p for p in points if not p.corrupt]
    if not pool:
        raise ExplorationError("no non-corrupt points to explore")
    metrics = {p.metric for p in pool}
    if len(metrics) > 1:
        raise ExplorationError(f"mixed accuracy metrics: {sorted(metrics)}")
    obj = np.array([p.objective() for p in pool], dtype=np.float64)
    front = []
    for i, p in enumerate(pool):
        weakly = (obj <= obj[i]).all(axis=1)
        strictly = (obj < obj[i]).any(axis=1)
        if not bool((weakly & strictly).any()):
            front.append(p)
    return front


def filter_budget(points, max_ber=None, min_accuracy_pct=None, max_area=None,
                  max_power=None, strict=True):
    """Budget-constrained candidate filtering (strict inequalities by
    default, matching "<" phrasing). At least one constraint required."""
    if max_ber is None and min_accuracy_pct is None and max_area is None \
            and max_power is None:
        raise InputError("at least one budget constraint required")

    def lt(a, b):
        return a < b if strict else a <= b

    out = []
    for p in points:
        if max_ber is not None and not (p.metric == METRIC_BER and lt(p.value, max_ber)):
            continue
        if min_accuracy_pct is not None and not (
                p.metric == METRIC_ACCURACY and lt(min_accuracy_pct, p.value)):
            continue
        if max_area is not None and not lt(p.area_um2, max_area):
            continue
        if max_power is not None and not lt(p.power_uW, max_power):
            continue
        out.append(p)
    return out


def savings_report(points, baseline):
    """Per-adder area/power savings (%) and accuracy delta vs a baseline
    point taken from the same list."""
    base = next((p for p in points if p.adder == baseline), None)
    if base is None:
        raise InputError(f"baseline adder '{baseline}' not among points")
    report = {}
    for p in points:
        report[p.adder] = {
            "area_saving_pct": 100.0 * (base.area_um2 - p.area_um2) / base.area_um2,
            "power_saving_pct": 100.0 * (base.power_uW - p.power_uW) / base.power_uW,
            "accuracy_delta": p.value - base.value,
        }
    return report


def emit_report(front, points, path, fmt="csv"):
    """Write all points with a Pareto-membership flag, stably sorted by
    (minimized accuracy, power, area)."""
    in_front = [(p, p in front) for p in points]
    rows = sorted(in_front, key=lambda pf: (pf[0].objective()[0],
                                            pf[0].power_uW, pf[0].area_um2))
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["adder", "metric", "value", "area_um2", "power_uW",
                        "corrupt_flag", "pareto"])
            for p, flag in rows:
                w.writerow([p.adder, p.metric, repr(p.value), repr(p.area_um2),
                            repr(p.power_uW), int(p.corrupt), int(flag)])
    elif fmt == "json":
        payload = [{"adder": p.adder, "metric": p.metric, "value": p.value,
                    "area_um2": p.area_um2, "power_uW": p.power_uW,
                    "corrupt_flag": p.corrupt, "pareto": flag}
                   for p, flag in rows]
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        raise InputError(f"unknown report format '{fmt}'")
