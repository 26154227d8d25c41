use std::collections::BTreeSet;

use meshknit::classification::*;
use meshknit::dot::{serialize_dot, DotObject};
use meshknit::knitting::knit_and_knot;
use meshknit::mesh::complete_morphisms;
use meshknit::presentations::*;
use meshknit::*;

fn tree(s: &str) -> DynkinTree {
    s.parse().unwrap()
}

fn figure4() -> (DynkinTree, Section, Configuration) {
    let t = tree("A7");
    let s = Section::equioriented(&t);
    let c = knit_and_knot(&t, &s, &[1, 4, 3, 2, 4, 3, 4]).unwrap();
    (t, s, c)
}

fn normalized(c: &Configuration, f: &[Point]) -> Vec<Point> {
    let l = c.period_l() as i64;
    let mut f = f.to_vec();
    f.sort();
    let k = f[0].base().slice.div_euclid(l);
    let mut out: Vec<Point> = f.iter().map(|p| p.shifted(-k * l)).collect();
    out.sort();
    out
}

/// Every section up to ν: one per choice of `l(lo) - l(hi)` on the edges and per
/// translate within an L-block.
fn all_sections(t: &DynkinTree) -> Vec<Section> {
    let edges = t.edges().to_vec();
    let l = t.loewy_number() as i64;
    (0..1u32 << edges.len())
        .flat_map(|mask| {
            let mut levels = vec![0i64; t.rank()];
            for (k, &(a, b)) in edges.iter().enumerate() {
                let (lo, hi) = (a.min(b), a.max(b));
                levels[hi - 1] = levels[lo - 1] - ((mask >> k) & 1) as i64;
            }
            let s = Section::new(t, levels).unwrap();
            (0..l).map(move |k| s.shifted(k))
        })
        .collect()
}

fn connecting_arrows(p: &QuiverPresentation) -> BTreeSet<(String, String)> {
    p.arrows.iter().filter(|a| a.shift == Some(1)).map(|a| (a.from.clone(), a.to.clone())).collect()
}

#[test]
fn figure4_pattern_algebra_and_connecting_arrows() {
    let (_, s, c) = figure4();
    let f = pattern_algebra(&c, &s);
    let names: Vec<String> = f.iter().map(|p| p.to_string()).collect();
    assert_eq!(names, ["(-7,7)*", "(-6,1)*", "(-5,1)*", "(-4,5)*", "(-3,1)*", "(-2,6)*", "(-1,7)*"]);
    assert!(is_fundamental(&c, &f).unwrap());
    // a..g in slice order; the figure's connecting arrows are d → ν⁻¹b, g → ν⁻¹a, f → ν⁻¹e.
    let q = quiver_of_ac(&c, &f).unwrap();
    let n = |k: usize| names[k].clone();
    let expected: BTreeSet<(String, String)> = [(n(3), n(1)), (n(6), n(0)), (n(5), n(4))].into_iter().collect();
    assert_eq!(connecting_arrows(&q), expected);
    assert_eq!(q.arrows.len(), 9);
    let complete: BTreeSet<(String, String)> =
        complete_morphisms(&c, &f).unwrap().into_iter().map(|(u, x)| (u.to_string(), x.to_string())).collect();
    let pairs: BTreeSet<(String, String)> = [(n(1), n(3)), (n(0), n(6)), (n(4), n(5))].into_iter().collect();
    assert_eq!(complete, pairs);
    let fa = fundamental_algebras(&c).unwrap();
    assert!(fa.iter().any(|a| a.points == normalized(&c, &f) && a.is_pattern));
}

#[test]
fn figure4_fundamental_algebra_census() {
    let (t, _, c) = figure4();
    let fa = fundamental_algebras(&c).unwrap();
    assert_eq!(fa.len(), 24);
    assert_eq!(fa.iter().filter(|a| a.is_pattern).count(), 16);
    for a in &fa {
        assert!(is_fundamental(&c, &a.points).unwrap());
        assert_eq!(a.points.len(), 7);
    }
    let from_sections: BTreeSet<Vec<Point>> =
        all_sections(&t).iter().map(|s| normalized(&c, &pattern_algebra(&c, s))).collect();
    let flagged: BTreeSet<Vec<Point>> = fa.iter().filter(|a| a.is_pattern).map(|a| a.points.clone()).collect();
    assert_eq!(from_sections, flagged);
}

#[test]
fn pattern_flags_match_sections_across_small_trees() {
    for name in ["A3", "A4", "A5", "D4", "D5"] {
        let t = tree(name);
        let sections = all_sections(&t);
        for c in enumerate_configurations(&t, Method::Patterns, Exec::Parallel) {
            let fa = fundamental_algebras(&c).unwrap();
            let flagged: BTreeSet<Vec<Point>> = fa.iter().filter(|a| a.is_pattern).map(|a| a.points.clone()).collect();
            let from_sections: BTreeSet<Vec<Point>> =
                sections.iter().map(|s| normalized(&c, &pattern_algebra(&c, s))).collect();
            assert_eq!(flagged, from_sections, "{c}");
        }
    }
}

#[test]
fn figure3_dot_has_ten_nodes() {
    let (_, s, c) = figure4();
    let q = quiver_of_ac(&c, &pattern_algebra(&c, &s)).unwrap();
    let dot = serialize_dot(DotObject::Presentation(&q)).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 10);
    assert_eq!(dot.lines().filter(|l| l.contains(" -> ") && !l.contains("dashed")).count(), 9);
    assert_eq!(dot, serialize_dot(DotObject::Presentation(&q)).unwrap());
}

#[test]
fn connecting_arrows_are_the_complete_morphisms() {
    let mut trees: Vec<DynkinTree> = (1..=5).map(|n| make_tree(Family::A, n).unwrap()).collect();
    trees.push(tree("D4"));
    for t in &trees {
        for c in enumerate_configurations(t, Method::Patterns, Exec::Parallel) {
            for fa in fundamental_algebras(&c).unwrap() {
                let q = quiver_of_ac(&c, &fa.points).unwrap();
                let complete: BTreeSet<(String, String)> = complete_morphisms(&c, &fa.points)
                    .unwrap()
                    .into_iter()
                    .map(|(u, x)| (x.to_string(), u.to_string()))
                    .collect();
                assert_eq!(connecting_arrows(&q), complete, "{c}");
            }
        }
    }
}

#[test]
fn reflection_round_trips() {
    for name in ["A4", "A5", "D4"] {
        let t = tree(name);
        for c in enumerate_configurations(&t, Method::Patterns, Exec::Parallel) {
            for fa in fundamental_algebras(&c).unwrap() {
                let mut sources = 0;
                for &x in &fa.points {
                    match reflect_fundamental(&c, &fa.points, x, Direction::Source) {
                        Ok(g) => {
                            sources += 1;
                            assert!(is_fundamental(&c, &g).unwrap());
                            let y = *g.iter().find(|p| !fa.points.contains(p)).unwrap();
                            assert_eq!(reflect_fundamental(&c, &g, y, Direction::Sink).unwrap(), fa.points);
                        }
                        Err(e) => assert!(matches!(e, Error::NotSource(_))),
                    }
                }
                assert!(sources > 0, "{c}: a finite acyclic quiver has a source");
            }
        }
    }
}

#[test]
fn reflection_rejects_outsiders() {
    let (_, s, c) = figure4();
    let f = pattern_algebra(&c, &s);
    let outside = f[0].shifted(-1);
    assert!(matches!(reflect_fundamental(&c, &f, outside, Direction::Sink), Err(Error::NotFundamental(_))));
    assert!(matches!(reflect_fundamental(&c, &f[1..], f[1], Direction::Sink), Err(Error::NotFundamental(_))));
}

#[test]
fn brauer_round_trip_and_axioms() {
    for n in 2..=6 {
        let ps = enumerate_pedigrees(n);
        assert_eq!(ps.len() as u64, pedigree_count(n));
        for p in ps {
            let q = brauer_from_pedigree(&p).unwrap();
            q.validate().unwrap();
            assert_eq!(q.cycles().len(), n + 1);
            assert_eq!(pedigree_from_brauer(&q, p.root_label()).unwrap(), p);
        }
    }
    assert!(matches!(brauer_from_pedigree(&Pedigree::leaf()), Err(Error::TooSmall)));
}

#[test]
fn trivial_extensions_are_brauer_tree_algebras() {
    for n in 2..=6 {
        let t = make_tree(Family::A, n).unwrap();
        let s = Section::equioriented(&t);
        for p in enumerate_pedigrees(n) {
            let d = pedigree_dimension_vector(&p);
            let c = knit_and_knot(&t, &s, &d).unwrap();
            let f = pattern_algebra(&c, &s);
            let te = trivial_extension_presentation(&c, &f).unwrap();
            let cart = presentation_cartan(&te, 4 * n).unwrap();
            assert!(cart.diagonal().iter().all(|&v| v == 2), "{c}");
            let via_group = cartan_matrix(&c, &AdmissibleGroup::tau(n as i64)).unwrap();
            assert!(cart.equivalent(&via_group), "{c}");
            let q = brauer_from_pedigree(&p).unwrap();
            let brauer = presentation_cartan(&brauer_presentation(&q).unwrap(), 4 * n).unwrap();
            assert!(cart.equivalent(&brauer), "{c}");
        }
    }
}

#[test]
fn d6_sigma_stable_cartan() {
    let t = tree("D6");
    let sigma = ZtAut::tau(&t, 3);
    let stable: Vec<Configuration> = enumerate_configurations(&t, Method::Patterns, Exec::Parallel)
        .into_iter()
        .filter(|c| c.is_stabilized_by(&sigma))
        .collect();
    assert_eq!(stable.len(), 6);
    let q = BrauerQuiver::new(vec![2, 3, 1], vec![1, 2, 3]).unwrap();
    let (a0, a1) = d3m_quotient_presentations(&q).unwrap();
    assert_eq!(a0.points, a1.points);
    assert_eq!(a0.arrows, a1.arrows);
    // R1(a) is the scaled commutativity together with γ⁴ = 0 when a ≠ 0.
    let is_r1 = |r: &Relation| match r {
        Relation::ScaledCommute { .. } => true,
        Relation::Zero { path } => path.iter().all(|l| l == "gamma"),
        _ => false,
    };
    let rest = |p: &QuiverPresentation| p.relations.iter().filter(|r| !is_r1(r)).cloned().collect::<Vec<_>>();
    assert_eq!(rest(&a0), rest(&a1));
    let scaled = |p: &QuiverPresentation| {
        p.relations
            .iter()
            .find_map(|r| match r {
                Relation::ScaledCommute { lhs, rhs, extra, a } => Some((lhs.clone(), rhs.clone(), extra.clone(), *a)),
                _ => None,
            })
            .unwrap()
    };
    let (s0, s1) = (scaled(&a0), scaled(&a1));
    assert_eq!((&s0.0, &s0.1, &s0.2, s0.3), (&s1.0, &s1.1, &s1.2, 0));
    assert_eq!(s1.3, 1);
    for c in &stable {
        let m = cartan_matrix(c, &AdmissibleGroup::tau(3)).unwrap();
        let c0 = m.diagonal().iter().position(|&v| v == 4).expect("c0");
        for i in 0..m.labels.len() {
            if i != c0 {
                assert_eq!(m.entries[i][i], 2);
                assert_eq!(m.entries[c0][i], 2);
                assert_eq!(m.entries[i][c0], 2);
            }
        }
        for p in [&a0, &a1] {
            assert!(presentation_cartan(p, 20).unwrap().equivalent(&m));
        }
    }
}

#[test]
fn d9_sigma_stable_cartan_matches_d3m_presentations() {
    let t = tree("D9");
    let sigma = ZtAut::tau(&t, 5);
    let presented: Vec<CartanMatrix> = enumerate_pedigrees(4)
        .iter()
        .filter_map(|p| d3m_quotient_presentations(&brauer_from_pedigree(p).unwrap()).ok())
        .flat_map(|(a0, a1)| [presentation_cartan(&a0, 30).unwrap(), presentation_cartan(&a1, 30).unwrap()])
        .collect();
    let stable: Vec<Configuration> = enumerate_configurations(&t, Method::Patterns, Exec::Parallel)
        .into_iter()
        .filter(|c| c.is_stabilized_by(&sigma))
        .collect();
    assert_eq!(stable.len(), 20);
    for c in &stable {
        let m = cartan_matrix(c, &AdmissibleGroup::tau(5)).unwrap();
        assert_eq!(m.diagonal().iter().filter(|&&v| v == 4).count(), 1);
        assert!(presented.iter().any(|p| p.equivalent(&m)), "{c}");
    }
}

#[test]
fn exceptional_cycle_matches_period_two_quotient() {
    let t = tree("A4");
    let q = BrauerQuiver::new(vec![2, 1], vec![1, 2]).unwrap();
    let mut n = 0;
    for c in enumerate_configurations(&t, Method::Patterns, Exec::Parallel) {
        if c.period() != 2 {
            continue;
        }
        n += 1;
        let m = cartan_matrix(&c, &AdmissibleGroup::tau(2)).unwrap();
        let mut diag = m.diagonal();
        diag.sort_unstable();
        assert_eq!(diag, [2, 3]);
        let loop_point = (1..=2).find(|&v| q.is_loop(CycleKind::Beta, v)).unwrap();
        let z = CycleRef { kind: CycleKind::Beta, point: loop_point };
        let p = exceptional_cycle_presentation(&q, z, 2).unwrap();
        assert!(presentation_cartan(&p, 20).unwrap().equivalent(&m), "{c}");
    }
    assert_eq!(n, 4);
}

#[test]
fn exceptional_multiplicity_one_is_plain() {
    for p in enumerate_pedigrees(3) {
        let q = brauer_from_pedigree(&p).unwrap();
        for (kind, cyc) in q.cycles() {
            let z = CycleRef { kind, point: cyc[0] };
            assert_eq!(exceptional_cycle_presentation(&q, z, 1).unwrap(), brauer_presentation(&q).unwrap());
        }
    }
}

#[test]
fn groups_and_quotients() {
    let (t, _, c) = figure4();
    assert!(matches!(cartan_matrix(&c, &AdmissibleGroup::tau(0)), Err(Error::NotAdmissible(_))));
    assert!(matches!(cartan_matrix(&c, &AdmissibleGroup::tau(3)), Err(Error::NotAdmissible(_))));
    let w = build_window(&t, Some(&c), -1, 16).unwrap();
    let fq = quotient(&w, &AdmissibleGroup::tau(7)).unwrap();
    assert_eq!(fq.projective.iter().filter(|&&p| p).count(), 7);
    assert_eq!(fq.points.len(), 7 * 7 + 7);
    let dot = serialize_dot(DotObject::Quotient(&fq)).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 7);
    for g in table_groups(&t, &c, 2) {
        let w = build_window(&t, Some(&c), -1, 40).unwrap();
        assert!(is_admissible(&g, &w).unwrap(), "{}", g.describe());
    }
}
