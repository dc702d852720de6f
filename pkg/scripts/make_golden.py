#!/usr/bin/env python3
"""Regenerate the golden API bodies under tests/golden/ from the fixtures.

Run after any intentional change to payload shapes or fixture data, then
review the diff.  Bodies are recorded byte-for-byte as returned by the
service.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from fastapi.testclient import TestClient

from sentibubbles.service import create_app
from service_fixture import GOLDEN_DIR, GOLDEN_REQUESTS, build_golden_snapshot


def main() -> int:
    snapshot = build_golden_snapshot()
    client = TestClient(create_app(snapshot))
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, (path, expected_status) in sorted(GOLDEN_REQUESTS.items()):
        response = client.get(path)
        if response.status_code != expected_status:
            print(
                f"FATAL {name}: status {response.status_code}, "
                f"expected {expected_status}",
                file=sys.stderr,
            )
            return 1
        (GOLDEN_DIR / name).write_bytes(response.content)
        print(f"{name}: {len(response.content)} bytes <- GET {path}")
    snapshot.store.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
