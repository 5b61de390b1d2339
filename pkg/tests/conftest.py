import os

import pytest


def extended_profile() -> bool:
    return os.environ.get("PAMCONG_TEST_PROFILE", "").lower() == "extended"


needs_extended = pytest.mark.skipif(
    not extended_profile(),
    reason="set PAMCONG_TEST_PROFILE=extended to run the large instances")
