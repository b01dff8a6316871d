"""Loading scenario assets (packaged JSON, overridable by directory)."""
from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

ENV_VAR = "FANOCHECK_ASSETS"
SCENARIOS = ("3-17", "2-16")


class UnknownScenario(KeyError):
    pass


def load_asset(scenario: str) -> dict:
    if scenario not in SCENARIOS:
        raise UnknownScenario(scenario)
    override = os.environ.get(ENV_VAR)
    if override:
        path = Path(override) / f"{scenario}.json"
        return json.loads(path.read_text(encoding="utf-8"))
    text = resources.files("fanocheck").joinpath("assets", f"{scenario}.json").read_text(encoding="utf-8")
    return json.loads(text)
