#!/usr/bin/env python3
"""Regenerate tests/golden/builtin_dispatch.json from the seeded fixture.

The golden file freezes the canonical JSON of every built-in
(family, service) dispatch so the open/closed tests can prove that
registering new kinds leaves prior outputs byte-identical.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from netbank.enquiry import builtin_registry, EnquiryRequest
from netbank.seed import seed_store

GOLDEN_PATH = Path(__file__).resolve().parent.parent / "tests" / "golden" / "builtin_dispatch.json"


def builtin_outputs(registry, snapshot) -> dict[str, str]:
    account_for_family = {"account": "ACC1", "credit_card": "CC1"}
    outputs = {}
    for selector in (0, 1):
        family = registry.get_type(selector)
        for index in (0, 1, 2):
            service = registry.get_service(index)
            request = EnquiryRequest(family, service, account_for_family[family.name])
            result = registry.dispatch(request, snapshot)
            outputs[f"{family.name}/{service.name}"] = json.dumps(
                result.to_json(), separators=(",", ":")
            )
    return outputs


def main():
    with tempfile.TemporaryDirectory() as tmp:
        snapshot = seed_store(tmp).snapshot()
    outputs = builtin_outputs(builtin_registry(), snapshot)
    GOLDEN_PATH.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN_PATH.write_text(json.dumps(outputs, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {GOLDEN_PATH} ({len(outputs)} entries)")


if __name__ == "__main__":
    main()
