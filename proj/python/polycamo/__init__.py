"""Gate-level dynamic camouflaging and attack-evaluation toolkit."""

from ._core import (  # noqa: F401
    AttackResult,
    BinaryImage,
    CamoNetlist,
    DeviceParams,
    MetricReport,
    MorphingOracle,
    MorphPolicy,
    Netlist,
    Oracle,
    StaticOracle,
    SwitchingReport,
    TechEntry,
    TestSet,
    appsat_attack,
    apply_key,
    atpg,
    camouflage,
    cenn_denoise,
    corrupt_by_hd,
    emulate_foundry_attack,
    evaluate_recovered_key,
    expand_to_keyed,
    fault_coverage,
    fixture_names,
    glyph_image,
    hacktest,
    hd_oer,
    image_metrics,
    iree_current,
    load_fixture,
    me_switching,
    meso_eval,
    parse_bench,
    ppa_estimate,
    read_bench,
    read_pbm,
    sat_attack,
    select_gates,
    simulate,
    tech_library,
    validate,
    write_bench,
    write_pbm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
