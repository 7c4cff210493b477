from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sl2graded.poly import Poly
from sl2graded.scalars import GaussianRational

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
scalars = st.builds(GaussianRational, rationals, st.one_of(st.just(0), rationals))
nonzero_scalars = scalars.filter(lambda c: not c.is_zero())
polys = st.lists(scalars, max_size=7).map(Poly)
small_polys = st.lists(scalars, max_size=4).map(Poly)
lambdas = st.sampled_from([0, 1, 2, -2, 4, -4, Fraction(1, 2), Fraction(5, 2), GaussianRational(0, 1), GaussianRational(1, 1)])
words = st.text(alphabet="xyhABC", max_size=6)
