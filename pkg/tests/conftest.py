import pytest

from hanjakit.config import AppConfig
from hanjakit.punctuation import default_registry
from hanjakit.runtime import Runtime

#: Small pool of common Hanja used to generate random texts.
HANJA_POOL = "子曰學而時習之不亦說乎李舜臣到漢城王者也矣甲乙丙天地人大小中國山水"


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture()
def runtime():
    rt = Runtime.from_config(AppConfig(db_path=":memory:"))
    yield rt
    rt.store.close()
