"""Simulation and optimization tools for privacy-preserving ISAC networks.

Modules
-------
scenario     world description, HPPP deployment, TOML configs
channel      path loss, fading, jammer beams, RIS steering and cascade
metrics      SINR, eavesdropping success probability, legitimate impact
jammer_opt   fixed ring, ant colony and brute-force jammer placement
ris_opt      RIS phase design by coordinate descent, lattice oracle
experiments  jammer and RIS sweeps, run manifests
report       CSV / manifest / SVG output
"""
__version__ = "0.1.0"
