"""Tile gadgets: manifests, exhaustive verifiers, synthesis, and the shipped rosters."""
from .manifest import (
    ContractSpec,
    GadgetManifest,
    Gender,
    Kind,
    ManifestError,
    PortSpec,
    blank_manifest,
    load_manifest,
    save_manifest,
)
from .verify import Verdict, verify_clause, verify_gadget, verify_isolation, verify_pair, verify_two_state
