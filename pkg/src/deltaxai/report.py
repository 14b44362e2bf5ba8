"""JSON/CSV serialisation of explanation, Shapley and global-delta results."""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources

import jsonschema

from deltaxai.delta_local import DeltaReport

CSV_COLUMNS = ("feature", "delta_median", "delta_hat_median", "delta_hat_iqr", "sign")


def load_schema(name):
    """One of the bundled schemas: ``report``, ``config``, ``shapley``, ``global``."""
    text = resources.files("deltaxai").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def report_to_dict(report: DeltaReport) -> dict:
    task = report.task
    doc = {
        "kind": task.kind,
        "L": int(task.bootstrap),
        "seed": int(task.seed),
        "y_star": report.y_star,
        "n_degenerate_replicates": report.n_degenerate,
        "features": {
            name: {
                "delta_median": a.raw_delta_median,
                "delta_hat_median": a.normalized_median,
                "delta_hat_iqr": a.normalized_iqr,
                "sign": a.sign.value,
            }
            for name, a in report.attributions.items()
        },
    }
    if task.kind == "classification":
        doc["d_t"] = task.threshold
        if math.isfinite(task.upper):
            doc["upper"] = task.upper
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def report_json(report: DeltaReport) -> str:
    return dumps(report_to_dict(report))


def report_csv(report: DeltaReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for name, a in report.attributions.items():
        w.writerow([name, repr(a.raw_delta_median), repr(a.normalized_median),
                    repr(a.normalized_iqr), a.sign.value])
    return buf.getvalue()


def shapley_to_dict(result, feature_names) -> dict:
    return {
        "base_value": result.base_value,
        "prediction": result.prediction,
        "features": [{"feature": n, "phi": float(p)} for n, p in zip(feature_names, result.phi)],
    }


def global_to_dict(feature, estimate) -> dict:
    return {"feature": feature, "delta": estimate.value, "K": estimate.partitions, "N": estimate.samples_used}


def validate(doc, schema_name):
    jsonschema.validate(doc, load_schema(schema_name))
