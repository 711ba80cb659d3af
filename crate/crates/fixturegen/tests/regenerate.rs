use std::path::Path;

use conhom::constructions::orbital_graphs;
use conhom::io::parse_generators;
use conhom_fixturegen::{all_fixtures, hall_janko, hoffman_singleton, mclaughlin};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

#[test]
fn shipped_fixtures_match_regeneration() {
    for f in all_fixtures() {
        let name = &f.meta.name;
        let gens = std::fs::read_to_string(fixture_dir().join(format!("{name}.gens"))).unwrap();
        let meta = std::fs::read_to_string(fixture_dir().join(format!("{name}.meta.json"))).unwrap();
        assert_eq!(gens, f.gens_text(), "{name}.gens is stale");
        assert_eq!(meta, f.meta_text(), "{name}.meta.json is stale");
    }
}

#[test]
fn orbital_graph_recovers_construction() {
    for (name, g) in [("hoffman-singleton", hoffman_singleton()), ("mcl2", mclaughlin()), ("hall-janko", hall_janko())] {
        let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.gens"))).unwrap();
        let gens = parse_generators(&text).unwrap();
        let orbitals = orbital_graphs(&gens.perms, gens.degree).unwrap();
        let k = g.valency().unwrap();
        let matching: Vec<_> = orbitals.graphs.iter().filter(|o| o.valency == k).collect();
        assert_eq!(matching.len(), 1, "{name}");
        assert_eq!(matching[0].graph, g, "{name}");
    }
}
