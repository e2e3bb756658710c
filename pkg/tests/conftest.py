import pytest

from weingarten import parab_h3, rot_r3
from weingarten.geomcore import WeingartenParams


@pytest.fixture(scope="session")
def fig3_profile():
    # The paper's pinned rotational example: a = -b = 2, z0 = 3, three periods.
    return rot_r3.integrate_profile(WeingartenParams(2, -2, 1), 3.0, n_periods=3, tol=1e-10)


@pytest.fixture(scope="session")
def fig3_structure(fig3_profile):
    return rot_r3.structure_report(fig3_profile)


@pytest.fixture(scope="session")
def parab_figure_profiles():
    # The four pinned parabolic configs of the classification figures.
    return {
        (0.5, -1.0): parab_h3.integrate_parabolic(0.5, -1.0, 1.0),
        (0.5, -0.8): parab_h3.integrate_parabolic(0.5, -0.8, 1.0),
        (0.5, -0.2): parab_h3.integrate_parabolic(0.5, -0.2, 1.0),
        (0.5, 0.3): parab_h3.integrate_parabolic(0.5, 0.3, 1.0),
    }
