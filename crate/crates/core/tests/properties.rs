use conhom::census::{has_induced_k4_minus_edge, parameters, xplus_obstruction, XPlusVerdict};
use conhom::constructions::*;
use conhom::geometry::{gq, GqKind};
use conhom::homct::*;
use conhom::permgrp::{automorphism_group, GroupChain};
use conhom::Graph;

fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("petersen".into(), petersen()),
        ("icosahedron".into(), icosahedron()),
        ("clebsch".into(), halved_cube(5).unwrap()),
        ("folded-cube-5".into(), folded_cube(5).unwrap()),
        ("folded-cube-6".into(), folded_cube(6).unwrap()),
        ("halved-cube-6".into(), halved_cube(6).unwrap()),
        ("johnson-6-3".into(), johnson(6, 3).unwrap()),
        ("johnson-8-4".into(), johnson(8, 4).unwrap()),
        ("k33".into(), complete_multipartite(2, 3).unwrap()),
        ("k3x3-cocktail".into(), complete_multipartite(3, 2).unwrap()),
        ("vo-4-2".into(), affine_polar(2, 2, false).unwrap()),
        ("vo+4-2".into(), affine_polar(2, 2, true).unwrap()),
        ("vo-6-2".into(), affine_polar(3, 2, false).unwrap()),
        ("vo+6-2".into(), affine_polar(3, 2, true).unwrap()),
        ("c9".into(), cycle(9).unwrap()),
    ];
    for n in 3..=6 {
        out.push((format!("hypercube-{n}"), hypercube(n).unwrap()));
    }
    for n in 3..=5 {
        out.push((format!("grid-{n}"), grid(n, n).unwrap()));
    }
    for q in 2..=3 {
        out.push((format!("pg2-{q}-incidence"), projective_plane_incidence(q).unwrap()));
    }
    for (kind, q) in [(GqKind::W3, 2), (GqKind::W3, 3), (GqKind::Q4, 3), (GqKind::Q5Minus, 2), (GqKind::Q5Minus, 3), (GqKind::H3, 2)] {
        let geo = gq(kind, q).unwrap();
        out.push((format!("{kind}-{q}"), geo.point_graph()));
        out.push((format!("{kind}-{q}-incidence"), geo.incidence_graph()));
    }
    out.push(("schlafli".into(), complement(&gq(GqKind::Q5Minus, 2).unwrap().point_graph())));
    out
}

fn aut(g: &Graph) -> GroupChain {
    automorphism_group(g).unwrap().chain
}

#[test]
fn verdicts_are_monotone_and_consistent_across_k() {
    for (name, g) in corpus() {
        let a = aut(&g);
        let full = check(&g, &a, &CheckOptions::new(6)).unwrap();
        let passes: Vec<bool> = full.verdicts.iter().map(|v| v.pass).collect();
        assert!(passes.windows(2).all(|w| w[0] || !w[1]), "{name}: {passes:?}");
        assert!(passes.iter().rev().skip(1).all(|&p| p), "{name}: only the last level may fail");
        for k in 1..6 {
            let r = check(&g, &a, &CheckOptions::new(k)).unwrap();
            assert_eq!(r.largest_verified, full.largest_verified.min(k), "{name} at k={k}");
        }
    }
}

#[test]
fn every_negative_verdict_revalidates() {
    let mut negatives = 0;
    for (name, g) in corpus() {
        let a = aut(&g);
        for mode in [Mode::Ch, Mode::Homogeneous] {
            let r = check(&g, &a, &CheckOptions::new(6).mode(mode)).unwrap();
            for v in r.verdicts.iter().filter(|v| !v.pass) {
                let w = v.witness.as_ref().unwrap();
                assert!(witness_is_valid(&g, &a, w).unwrap(), "{name} {mode:?} k={}", v.k);
                assert_eq!(w.sigma.len(), v.k - 1);
                negatives += 1;
            }
        }
    }
    assert!(negatives > 20);
}

#[test]
fn level_one_and_two_sanity() {
    for (name, g) in corpus() {
        let a = aut(&g);
        let r = check(&g, &a, &CheckOptions::new(2)).unwrap();
        assert_eq!(r.holds(1), Some(a.is_transitive()), "{name}");
        let arc_transitive = a.is_transitive() && {
            let stab = a.pointwise_stabilizer(&[0]).unwrap();
            let nbrs: Vec<usize> = g.neighbours(0).collect();
            stab.is_transitive_on(&nbrs)
        };
        assert_eq!(r.holds(2), Some(arc_transitive), "{name}");
    }
}

#[test]
fn srg_identity_c2k2_equals_b1k1() {
    let mut srgs = 0;
    for (name, g) in corpus() {
        let p = parameters(&g);
        if p.srg.is_none() {
            continue;
        }
        srgs += 1;
        let (c2, k2, b1, k1) = (p.c[2].unwrap(), p.k[2].unwrap(), p.b[1].unwrap(), p.k[1].unwrap());
        assert_eq!(c2 * k2, b1 * k1, "{name}");
    }
    assert!(srgs >= 10);
}

#[test]
fn girth_bound_holds_across_corpus() {
    for (name, g) in corpus() {
        let a = aut(&g);
        match girth_bound_check(&g, &a).unwrap() {
            GirthBound::Fail { s, girth } => panic!("{name}: s={s} girth={girth}"),
            GirthBound::Pass { .. } | GirthBound::Skipped => {}
        }
    }
    let heawood = projective_plane_incidence(2).unwrap();
    assert_eq!(girth_bound_check(&heawood, &aut(&heawood)).unwrap(), GirthBound::Pass { s: 4, girth: 6 });
    let c7 = cycle(7).unwrap();
    assert_eq!(girth_bound_check(&c7, &aut(&c7)).unwrap(), GirthBound::Skipped);
}

#[test]
fn gq_point_graphs_have_no_induced_k4_minus_edge() {
    for kind in [GqKind::W3, GqKind::Q4, GqKind::Q5Minus, GqKind::H3, GqKind::H4] {
        for q in [2, 3, 4] {
            let Ok(geo) = gq(kind, q) else { continue };
            assert!(!has_induced_k4_minus_edge(&geo.point_graph()), "{kind}({q})");
        }
    }
    assert!(has_induced_k4_minus_edge(&complete_multipartite(3, 2).unwrap()));
}

#[test]
fn xplus_obstruction_implies_not_four_ch() {
    let j = johnson(8, 4).unwrap();
    let a = aut(&j);
    let verdict = xplus_obstruction(&j, Some(&a)).unwrap();
    assert!(matches!(verdict, XPlusVerdict::NotFourCh { .. }), "{verdict:?}");
    assert_eq!(check(&j, &a, &CheckOptions::new(4)).unwrap().holds(4), Some(false));
    for (name, g) in corpus() {
        let a = aut(&g);
        if let XPlusVerdict::NotFourCh { .. } = xplus_obstruction(&g, Some(&a)).unwrap() {
            assert_eq!(check(&g, &a, &CheckOptions::new(4)).unwrap().holds(4), Some(false), "{name}");
        }
    }
}

#[test]
fn line_graph_transfer_is_consistent() {
    let cases = [
        ("heawood", projective_plane_incidence(2).unwrap()),
        ("petersen", petersen()),
        ("tutte-coxeter", gq(GqKind::W3, 2).unwrap().incidence_graph()),
    ];
    for (name, g) in cases {
        for row in line_graph_transfer(&g, 5).unwrap() {
            assert!(row.consistent, "{name}: {row:?}");
        }
    }
    let heawood = line_graph_transfer(&projective_plane_incidence(2).unwrap(), 5).unwrap();
    let line_ch: Vec<bool> = heawood.iter().map(|r| r.line_graph_ch).collect();
    assert_eq!(line_ch, vec![true, true, true, false]);
}

#[test]
fn arc_transitivity_examples() {
    let heawood = projective_plane_incidence(2).unwrap();
    assert_eq!(arc_transitivity_degree(&heawood, &aut(&heawood), 8).unwrap(), 4);
    let tutte = gq(GqKind::W3, 2).unwrap().incidence_graph();
    assert_eq!(arc_transitivity_degree(&tutte, &aut(&tutte), 8).unwrap(), 5);
    let c7 = cycle(7).unwrap();
    assert_eq!(arc_transitivity_degree(&c7, &aut(&c7), 6).unwrap(), 6);
}

#[test]
fn icosahedron_geodesic_extension_fails() {
    let g = icosahedron();
    let a = aut(&g);
    let du = g.distances_from(0);
    let v = g.neighbours(0).next().unwrap();
    let dv = g.distances_from(v);
    let w = (0..g.order()).find(|&w| du[w] == 2 && dv[w] == 1).unwrap();
    let ext = check_extension(&g, &a, &[0, v, w], &[w]).unwrap();
    assert!(!ext.pass());
    assert!(ext.x.iter().any(|&x| du[x] == 3) && ext.x.iter().any(|&x| du[x] == 2));
}

#[test]
fn hypercube_extensions_all_pass_to_level_four() {
    let g = hypercube(4).unwrap();
    assert_eq!(check(&g, &aut(&g), &CheckOptions::new(4)).unwrap().largest_verified, 4);
    let h = halved_cube(6).unwrap();
    assert_eq!(check(&h, &aut(&h), &CheckOptions::new(3)).unwrap().largest_verified, 3);
}

#[test]
fn subgroup_negatives_are_flagged() {
    // the rotations of C6 are not transitive on the arcs' reversals, so
    // level 2 fails for the subgroup while it holds for the full group
    let g = cycle(6).unwrap();
    let rot = GroupChain::new(6, vec![conhom::permgrp::Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap()]).unwrap();
    let r = check(&g, &rot, &CheckOptions::new(3).trust(Trust::SubgroupOnly)).unwrap();
    assert!(!r.negative_conclusive);
    assert_eq!(check(&g, &aut(&g), &CheckOptions::new(3)).unwrap().largest_verified, 3);
}

#[test]
fn non_automorphisms_are_rejected() {
    let g = path(3).unwrap();
    let bad = GroupChain::new(3, vec![conhom::permgrp::Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
    assert!(check(&g, &bad, &CheckOptions::new(2)).is_err());
}

#[test]
fn class_cap_trips_on_a_tiny_cap() {
    let g = grid(4, 4).unwrap();
    let err = check(&g, &aut(&g), &CheckOptions::new(6).class_cap(2)).unwrap_err();
    assert!(matches!(err, conhom::CheckError::ClassExplosion { .. }), "{err}");
}
