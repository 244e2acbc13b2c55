"""
Change impact and re-certification
==================================

"""

from samskit import minisams, Iri
from samskit.services import (
    CertificationState, impact_set, recertification_set, reject, verification_coverage,
    definitions_for_name,
)

M = "http://www.sams-projekt.de/minisams/"
ds = minisams()

# everything downstream of the system-level symbol s
report = impact_set(ds, Iri(M + "sysspec#s"))
print(sorted(o.value for o in report.objects))
print(sorted(d.value for d in report.documents))

# documents touched after the last certification round
print(sorted(d.value for d in recertification_set(ds, "2009-01-01")))

# approving is local; rejecting propagates along the same links
state = CertificationState().approve(Iri(M + "code"))
state = reject(ds, state, Iri(M + "sysspec#s"))
print(state.dumps())

# how many assertions have a verified proof
print(verification_coverage(ds))

# one display name, two meanings
for symbol, defs in definitions_for_name(ds, "s").items():
    print(symbol.value, "->", [d.value for d in defs])
