import pytest

from aiida_susyqm.superconformal import build_system

pytest_plugins = ["aiida.tools.pytest_fixtures"]


@pytest.fixture(scope="session")
def oscillator():
    """The W = ωx system at ω = 1."""
    return build_system("example2", omega=1.0)


@pytest.fixture(scope="session")
def inverse_system():
    """The W = k/x system at k = 1."""
    return build_system("example1", k=1.0)


@pytest.fixture
def workflow_profile(request):
    """Temporary AiiDA profile; WorkChain tests skip when none can be created."""
    try:
        return request.getfixturevalue("aiida_profile")
    except Exception as error:
        pytest.skip(f"no AiiDA test profile available: {error}")
