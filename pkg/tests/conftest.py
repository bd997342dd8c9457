import json
from importlib import resources

import pytest

from weylchar.characters import CharacterCache
from weylchar.laurent import LaurentPolynomial
from weylchar.rootsys import cartan_datum
from weylchar.specialroots import build_system


@pytest.fixture(scope="session")
def f4():
    return cartan_datum("F4")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("weylchar-cache")


@pytest.fixture(scope="session")
def f4_system(f4, cache_dir):
    return build_system(f4, cache_dir=cache_dir)


@pytest.fixture(scope="session")
def char_cache(cache_dir):
    return CharacterCache(cache_dir)


@pytest.fixture(scope="session")
def reference():
    path = resources.files("weylchar.data").joinpath("f4_reference.json")
    return json.loads(path.read_text(encoding="utf-8"))


def expand_factored(obj: dict) -> LaurentPolynomial:
    """Expand a {'factors': [{'power', 'terms'}...]} reference entry."""
    acc = LaurentPolynomial.one(2)
    for factor in obj["factors"]:
        base = LaurentPolynomial(2, {tuple(t[1]): t[0] for t in factor["terms"]})
        for _ in range(factor["power"]):
            acc = acc * base
    return acc


@pytest.fixture(scope="session")
def spec_images(reference):
    return [tuple(im) for im in reference["specialization"]]
