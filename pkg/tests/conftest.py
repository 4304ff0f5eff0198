import pytest

from pairbreaker.fixtures import write_fixture_set


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    write_fixture_set(d)
    return d
