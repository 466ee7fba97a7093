"""The bridge verdict: support plus content plus detector implies P != 0.

Every channel reports the support bit, both content checks, the detector
check at the probe and whether the interaction complex is nonzero.
"""

from mttlab.checks import bridge_verdict
from mttlab.models import DEMOS
from mttlab.serialize import render_verdict_md

D = DEMOS["bridge"]()
print(render_verdict_md(bridge_verdict(D)))
