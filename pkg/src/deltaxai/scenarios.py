"""Scenario configs, the built-in linear-Gaussian registry, and the batch runner."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import jsonschema
import numpy as np

from deltaxai import report as _report
from deltaxai.curves import curves_csv, export_curves, render_curves_svg
from deltaxai.delta_local import DeltaReport, ExplanationTask, explain
from deltaxai.errors import ConfigError, DeltaXAIError
from deltaxai.model import (
    Dataset,
    GaussianPopulation,
    LinearModel,
    default_feature_names,
    sample_population,
)
from deltaxai.shapley import ShapleyResult, shapley_exact

DEFAULT_TRAIN_N = 5000
DEFAULT_BOOTSTRAP = 200
CURVE_POINTS = 256

OUTPUT_FLAGS = ("report_json", "report_csv", "curves_csv", "curves_svg", "shapley")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    population: GaussianPopulation
    model: LinearModel
    instance: tuple[float, ...]
    task: ExplanationTask = ExplanationTask()
    train_n: int = DEFAULT_TRAIN_N
    feature_names: tuple[str, ...] = ()
    outputs: dict = field(default_factory=lambda: {
        "report_json": True, "report_csv": False, "curves_csv": False, "curves_svg": False, "shapley": True,
    })

    def __post_init__(self):
        m = self.population.n_features
        if self.model.n_features != m:
            raise ConfigError(f"model has {self.model.n_features} coefficients, population {m} features", "model.beta")
        if len(self.instance) != m:
            raise ConfigError(f"instance has {len(self.instance)} entries, population {m} features", "instance")
        if not all(math.isfinite(v) for v in self.instance):
            raise ConfigError("instance entries must be finite", "instance")
        if self.train_n < 100:
            raise ConfigError("train_n must be at least 100", "train_n")
        names = tuple(self.feature_names) or default_feature_names(m)
        if len(names) != m or len(set(names)) != m:
            raise ConfigError(f"need {m} distinct feature names", "feature_names")
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "instance", tuple(float(v) for v in self.instance))

    def with_overrides(self, seed=None, train_n=None, bootstrap=None) -> "ScenarioConfig":
        task = self.task
        if seed is not None:
            task = replace(task, seed=seed)
        if bootstrap is not None:
            if bootstrap < 2:
                raise ConfigError("bootstrap must be at least 2", "--bootstrap")
            task = replace(task, bootstrap=bootstrap)
        return replace(self, task=task, train_n=self.train_n if train_n is None else train_n)

    def sample(self) -> Dataset:
        return sample_population(self.population, self.train_n, self.task.seed, self.feature_names)


def _linear_gaussian(name, beta, instance, correlations=None):
    m = len(beta)
    return ScenarioConfig(
        name=name,
        population=GaussianPopulation.standard(m, correlations),
        model=LinearModel(np.array(beta, dtype=float)),
        instance=tuple(instance),
    )


CASE1 = (100.0, 50.0, 50.0)
CASE2 = (1000.0, 50.0, 50.0)

_REGISTRY = {
    "case1_extreme": lambda: _linear_gaussian("case1_extreme", CASE1, (0, 0, 2)),
    "case1_equal": lambda: _linear_gaussian("case1_equal", CASE1, (0.1, 0.1, 0.1)),
    "case1_double_extreme": lambda: _linear_gaussian("case1_double_extreme", CASE1, (1, 2, 2)),
    "case1_moderate": lambda: _linear_gaussian("case1_moderate", CASE1, (0.4, 0.8, 0.8)),
    "case2_dominant": lambda: _linear_gaussian("case2_dominant", CASE2, (0, 0, 2)),
    "case2_huge_beta": lambda: _linear_gaussian("case2_huge_beta", (100000.0, 50.0, 50.0), (0, 0, 2)),
    # x4 is outside the model but tied to x1
    "corr_external": lambda: _linear_gaussian(
        "corr_external", CASE1 + (0.0,), (0.1, 0.1, 0.1, 1), {(0, 3): 0.99}
    ),
    "corr_internal": lambda: _linear_gaussian(
        "corr_internal", CASE1, (0.1, 0.1, 0.1), {(0, 1): 0.99}
    ),
}


def scenario_names() -> list[str]:
    return list(_REGISTRY)


def builtin(name: str) -> ScenarioConfig:
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise ConfigError(f"unknown scenario {name!r}; choose from {', '.join(_REGISTRY)}", "scenario") from None


def _path(err) -> str:
    parts = [str(p) for p in err.absolute_path]
    return ".".join(parts) or "<root>"


def config_from_dict(doc: dict, name: str = "custom") -> ScenarioConfig:
    """Validate a config document (schema, then cross-field checks) and build it."""
    validator = jsonschema.Draft202012Validator(_report.load_schema("config"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        raise ConfigError(errors[0].message, _path(errors[0]))

    pop = doc["population"]
    cov = pop["covariance"]
    m = len(cov)
    if any(len(row) != m for row in cov):
        raise ConfigError("covariance must be square", "population.covariance")
    mean = pop.get("mean", [0.0] * m)
    try:
        population = GaussianPopulation(np.array(mean, float), np.array(cov, float))
    except DeltaXAIError as exc:
        raise ConfigError(str(exc), "population") from None

    spec = doc["model"]
    model = LinearModel(np.array(spec["beta"], float), spec.get("intercept", 0.0), spec.get("link", "identity"))

    t = doc.get("task", {})
    upper = t.get("upper")
    try:
        task = ExplanationTask(
            kind=t.get("kind", "regression"),
            threshold=t.get("threshold"),
            bootstrap=t.get("bootstrap", DEFAULT_BOOTSTRAP),
            seed=t.get("seed", 0),
            upper=math.inf if upper is None else upper,
        )
    except DeltaXAIError as exc:
        raise ConfigError(str(exc), "task") from None
    if task.kind == "classification" and model.link == "identity":
        raise ConfigError("classification needs a probability-valued link", "model.link")

    outputs = dict(ScenarioConfig.__dataclass_fields__["outputs"].default_factory())
    outputs.update(doc.get("outputs", {}))
    return ScenarioConfig(
        name=doc.get("name", name),
        population=population,
        model=model,
        instance=tuple(doc["instance"]),
        task=task,
        train_n=doc.get("train_n", DEFAULT_TRAIN_N),
        feature_names=tuple(doc.get("feature_names", ())),
        outputs=outputs,
    )


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, f"{path}: line {exc.lineno}, column {exc.colno}") from None
    return config_from_dict(doc, name=path.stem)


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    trainset: Dataset
    report: DeltaReport
    shapley: ShapleyResult | None
    files: dict[str, Path]


def run_scenario(config: ScenarioConfig, out_dir=None, workers: int = 1, outputs: dict | None = None) -> ScenarioResult:
    """Sample, explain, optionally run Shapley, and write the requested files.

    Files are named ``<scenario>_<kind>.<ext>`` inside ``out_dir``; with
    ``out_dir=None`` nothing is written.
    """
    flags = dict(config.outputs)
    if outputs:
        flags.update(outputs)
    trainset = config.sample()
    rep = explain(config.model, trainset, config.instance, config.task, workers=workers)
    shap = shapley_exact(config.model, trainset, config.instance) if flags.get("shapley") else None

    files = {}
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)

        def put(key, suffix, text):
            p = out / f"{config.name}_{suffix}"
            p.write_text(text)
            files[key] = p

        if flags.get("report_json"):
            put("report_json", "report.json", _report.report_json(rep))
        if flags.get("report_csv"):
            put("report_csv", "report.csv", _report.report_csv(rep))
        if flags.get("curves_csv") or flags.get("curves_svg"):
            table = export_curves(config.model, trainset, config.instance, CURVE_POINTS)
            if flags.get("curves_csv"):
                put("curves_csv", "curves.csv", curves_csv(table))
            if flags.get("curves_svg"):
                put("curves_svg", "curves.svg", render_curves_svg(table, title=config.name))
        if shap is not None:
            put("shapley", "shapley.json",
                _report.dumps(_report.shapley_to_dict(shap, trainset.feature_names)))
    return ScenarioResult(config, trainset, rep, shap, files)
