use qe_building::lattice::Mat;
use qe_building::triples::Direction;
use qe_building::*;
use qe_hecke::{card_em_direct, n_lambda};
use qe_weyl::{in_hm, WeylVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn o(p: u32) -> BuildingVertex {
    BuildingVertex::standard(p).unwrap()
}

fn big(n: &num_bigint::BigInt) -> usize {
    n.to_string().parse().unwrap()
}

#[test]
fn spheres_match_macdonald_volumes() {
    for p in [2u32, 3] {
        let b = ball(&o(p), 4).unwrap();
        let mut hist: BTreeMap<WeylVector, usize> = BTreeMap::new();
        for d in &b.dist {
            *hist.entry(*d).or_insert(0) += 1;
        }
        for r in 0..=4 {
            for s in 0..=4 - r {
                let v = WeylVector::new(r, s);
                assert_eq!(hist.get(&v).copied().unwrap_or(0), big(&n_lambda(p, &v)), "p={p} {v:?}");
            }
        }
    }
    assert_eq!(sphere(&o(2), WeylVector::new(1, 0)).unwrap().len(), 7);
}

#[test]
fn bfs_layer_is_gallery_distance() {
    let layers = ball::bfs_layers(&o(2), 4).unwrap();
    for (k, l) in layers.iter().enumerate() {
        for v in l {
            assert_eq!(combinatorial_distance(&o(2), v), k as i64);
        }
    }
    assert_eq!(ball(&o(2), 0).unwrap().vertices, vec![o(2)]);
}

#[test]
fn distance_is_dual_under_swap() {
    let b = ball(&o(2), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let x = &b.vertices[rng.gen_range(0..b.len())];
        let y = &b.vertices[rng.gen_range(0..b.len())];
        assert_eq!(weyl_distance(x, y), weyl_distance(y, x).dual().unwrap());
    }
}

#[test]
fn canonicalize_is_idempotent_and_class_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [2u32, 3] {
        for _ in 0..200 {
            let mut m: Mat = [[0; 3]; 3];
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = rng.gen_range(-9..10);
                }
            }
            let Ok(v) = BuildingVertex::canonicalize(&m, p) else { continue };
            assert_eq!(BuildingVertex::canonicalize(&v.hnf, p).unwrap(), v);
            let scaled = m.map(|r| r.map(|x| x * p as i64));
            assert_eq!(BuildingVertex::canonicalize(&scaled, p).unwrap(), v);
            // a column operation and a unit rescaling give the same class
            let mut m2 = m;
            for row in m2.iter_mut() {
                row[1] += 5 * row[0];
                row[2] *= if p == 2 { 3 } else { 2 };
            }
            assert_eq!(BuildingVertex::canonicalize(&m2, p).unwrap(), v);
        }
    }
}

#[test]
fn adjacency_is_symmetric() {
    for p in [2u32, 3] {
        for (w, c) in o(p).neighbors() {
            let back = w.neighbors();
            assert!(back.iter().any(|(v, k)| *v == o(p) && *k == 3 - c));
        }
    }
}

#[test]
fn polytopal_balls_match_card() {
    for (p, m) in [(2u32, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        assert_eq!(polytopal_ball(&o(p), m).unwrap().len(), big(&card_em_direct(p, m)), "p={p} m={m}");
    }
    assert_eq!(polytopal_ball(&o(2), 1).unwrap().len(), 43);
}

#[test]
fn resource_guard() {
    assert!(matches!(ball(&o(2), 9), Err(BuildingError::ResourceLimit(_))));
    assert!(matches!(ball(&o(3), 8), Err(BuildingError::ResourceLimit(_))));
}

#[test]
fn transition_census_examples() {
    let q = 2;
    let x = o(q);
    let c0 = transition_census(&x, &x, 1);
    assert_eq!(c0, BTreeMap::from([(WeylVector::new(1, 0), 7)]));
    let y = sphere(&x, WeylVector::new(2, 1)).unwrap().remove(0);
    let c = transition_census(&x, &y, 1);
    assert_eq!(
        c,
        BTreeMap::from([(WeylVector::new(3, 1), 4), (WeylVector::new(1, 2), 2), (WeylVector::new(2, 0), 1)])
    );
    // support and multiplicities in every shape up to distance 3, both colours
    let allowed: Vec<usize> = vec![4, 2, 1, 6, 3, 7];
    for r in 0..=3 {
        for s in 0..=3 - r {
            let y = sphere(&x, WeylVector::new(r, s)).unwrap().remove(0);
            for color in [1u8, 2] {
                let c = transition_census(&x, &y, color);
                let (u, v) = if color == 1 { ((1, 0), (0, 1)) } else { ((0, 1), (1, 0)) };
                let support = [
                    WeylVector::new(r + u.0, s + u.1),
                    WeylVector::new(r - v.0, s - v.1),
                    WeylVector::new(r + v.0 - u.0, s + v.1 - u.1),
                ];
                for (k, n) in &c {
                    assert!(support.contains(k), "({r},{s}) colour {color}: {k:?}");
                    assert!(allowed.contains(n));
                }
                assert_eq!(c.values().sum::<usize>(), 7);
                if r > 0 && s > 0 {
                    assert_eq!(c[&support[1]], 1);
                }
            }
        }
    }
}

#[test]
fn para_sizes_and_geodesics() {
    let x = o(2);
    assert_eq!(para(&x, &x).unwrap(), vec![x.clone()]);
    let b = ball(&x, 4).unwrap();
    for (y, d) in b.iter() {
        let pa = para(&x, y).unwrap();
        assert_eq!(pa.len() as i64, (d.r + 1) * (d.s + 1), "{d:?}");
        assert_eq!(pa, geodesic_interval(&x, y).unwrap(), "{d:?}");
        for z in &pa {
            assert!(is_additive_triple(&x, y, z));
        }
    }
    // pairs not involving the base vertex
    let b2 = ball(&x, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let u = &b2.vertices[rng.gen_range(0..b2.len())];
        let v = &b2.vertices[rng.gen_range(0..b2.len())];
        if combinatorial_distance(u, v) <= 4 {
            assert_eq!(para(u, v).unwrap(), geodesic_interval(u, v).unwrap());
        }
    }
}

#[test]
fn two_confluence_points_across_inner_edge() {
    let x = o(2);
    let y = sphere(&x, WeylVector::new(1, 1)).unwrap().remove(0);
    let inner: Vec<_> = para(&x, &y).unwrap().into_iter().filter(|v| *v != x && *v != y).collect();
    assert_eq!(inner.len(), 2);
    let nb0: Vec<_> = inner[0].neighbors().into_iter().map(|(v, _)| v).collect();
    let apexes: Vec<_> = inner[1]
        .neighbors()
        .into_iter()
        .map(|(v, _)| v)
        .filter(|v| nb0.contains(v) && *v != x && *v != y)
        .collect();
    assert!(!apexes.is_empty());
    for p in &apexes {
        let mut c = confluence_points(&x, &y, p).unwrap();
        c.sort();
        let mut want = inner.clone();
        want.sort();
        assert_eq!(c, want);
    }
}

#[test]
fn additive_triples_have_trivial_branch() {
    let x = o(2);
    let y = sphere(&x, WeylVector::new(2, 1)).unwrap().remove(0);
    for z in para(&x, &y).unwrap() {
        let c = classify_triple(&x, &y, &z).unwrap();
        let d = weyl_distance(&x, &z);
        assert_eq!(c.confluence, z);
        assert_eq!((c.coords.k, c.coords.a1, c.coords.a2, c.coords.b1, c.coords.b2), (0, d.r, d.s, 0, 0));
    }
}

#[test]
fn classification_covers_radius_three() {
    let x = o(2);
    let b = ball(&x, 3).unwrap();
    let mut seen_k = BTreeMap::new();
    for r in 0..=3 {
        for s in 0..=3 - r {
            let y = sphere(&x, WeylVector::new(r, s)).unwrap().remove(0);
            let rows = qe_par::map(&b.vertices, |z| (z.clone(), classify_triple(&x, &y, z)));
            for (z, res) in rows {
                let c = res.unwrap_or_else(|e| panic!("({r},{s}) z={:?}: {e}", z.hnf));
                let t = c.coords;
                assert!(t.a1 <= r && t.a2 <= s);
                assert!(is_primitive_triple(&x, &y, &c.confluence).unwrap());
                let (xp, yp) = t.predicted_apex();
                assert_eq!(xp, weyl_distance(&x, &c.confluence));
                assert_eq!(yp, weyl_distance(&y, &c.confluence));
                assert_eq!(WeylVector::new(t.b1, t.b2), weyl_distance(&c.confluence, &z));
                // the confluence point sits on geodesics towards z from both ends
                assert!(is_additive_triple(&x, &z, &c.confluence));
                assert!(is_additive_triple(&y, &z, &c.confluence));
                *seen_k.entry((t.k, t.alpha == Direction::First)).or_insert(0) += 1;
            }
        }
    }
    assert!(seen_k.keys().any(|(k, _)| *k > 0), "{seen_k:?}");
}

#[test]
fn triangles_on_a_segment() {
    let q = 2;
    let x = o(q);
    for k in 1..=3i64 {
        for seg in [WeylVector::new(k, 0), WeylVector::new(0, k)] {
            let y = sphere(&x, seg).unwrap().remove(0);
            let want = (q as usize + 1) * (q as usize).pow(k as u32 - 1);
            assert_eq!(triangle_count(&x, &y).unwrap(), want, "segment {seg:?}");
        }
    }
}

#[test]
fn ball_growth_sandwich() {
    let g = ball_growth(2, &[2, 3, 4, 5, 6]).unwrap();
    assert!(g.sandwich_holds());
    for (r, n) in g.radii.iter().zip(&g.sizes) {
        let mut want = 0;
        for a in 0..=*r {
            for b in 0..=*r - a {
                want += big(&n_lambda(2, &WeylVector::new(a, b)));
            }
        }
        assert_eq!(*n, want);
    }
    // constants fitted on [2, 5] still sandwich R = 6
    let head = BallGrowth::fit(2, g.radii[..4].to_vec(), g.sizes[..4].to_vec());
    let r6 = 4f64.powi(6);
    assert!(head.c1 * r6 <= g.sizes[4] as f64);
    assert!(g.sizes[4] as f64 <= head.c2 * 6f64.powf(head.ell) * r6 * 1.25, "{head:?} vs {g:?}");
}

#[test]
fn hexagon_law_on_the_building() {
    for m in 0..=2i64 {
        let n = 2 * (m + 1);
        for r in 0..=2 * n {
            for s in 0..=2 * n {
                let lam = WeylVector::new(r, s);
                if !in_hm(&lam, m + 1) {
                    continue;
                }
                let c = em_lambda_card(2, m, lam).unwrap();
                assert_eq!(c > 0, in_hm(&lam, m), "m={m} {lam:?}: {c}");
            }
        }
    }
    assert_eq!(em_lambda_card(2, 1, WeylVector::ZERO).unwrap(), 43);
    assert!(em_lambda_card(2, 1, WeylVector::new(2, 2)).unwrap() > 0);
}

#[test]
fn json_lines_are_sorted() {
    let b = ball(&o(2), 1).unwrap();
    let lines: Vec<_> = b.to_json_lines().lines().map(|s| s.to_string()).collect();
    assert_eq!(lines.len(), 15);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert!(first.get("hnf").is_some() && first.get("dist").is_some());
}
