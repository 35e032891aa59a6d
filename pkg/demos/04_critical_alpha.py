# How small must the 1/f amplitude be for D to stay below 1e-4 at the
# qubit's characteristic time 1/E_J (about 12.7 ps)?

import json

from jcqdecoherence import ScenarioConfig, critical_alpha_report

for noise in ("oneoverf", "composite"):
    report = critical_alpha_report(ScenarioConfig(noise=noise))
    print(noise)
    print(json.dumps({k: v for k, v in report.items() if k != "note"}, indent=2))
    print(report["note"])
