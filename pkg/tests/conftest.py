import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from weightlab import LatticeSpec, build_root_datum


@lru_cache(maxsize=None)
def get_datum(type_string: str, mode: str = "sc", generators=()):
    """Session-cached data so character/tensor caches are shared across tests."""
    return build_root_datum(type_string, LatticeSpec(mode, tuple(generators)))
