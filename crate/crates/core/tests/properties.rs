use eqehrhart::cli::SeriesJson;
use eqehrhart::corpus;
use eqehrhart::exactlin::{hnf, rat, snf, Int, IntMatrix, LatticeBasis, Rat};
use eqehrhart::hstar::{equivariant_l, hstar, hstar_n};
use eqehrhart::instance::{Instance, RawInstance};
use eqehrhart::poly::Poly;
use eqehrhart::repr_ring::{induce, inner_product, restrict, ClassFunction, Cyclo, CharacterTable};
use eqehrhart::triangulate::{check_triangulation, invariant_triangulation, PolyComplex};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn random(seed: u64) -> Instance {
    Instance::from_raw(corpus::random_instance(seed)).expect("random instances are valid")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_a_unimodular_row_reduction(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let a = IntMatrix::from_rows(&m);
        let h = hnf(&a);
        prop_assert_eq!(h.u.mul(&a), h.h.clone());
        prop_assert!(h.u.det().abs().is_one());
        for (i, &p) in h.pivots.iter().enumerate() {
            let piv = h.h.get(i, p).clone();
            prop_assert!(piv.is_positive());
            for k in 0..i {
                let above = h.h.get(k, p);
                prop_assert!(!above.is_negative() && above < &piv);
            }
        }
    }

    #[test]
    fn snf_diagonal_divides(m in (1usize..4, 1usize..4).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let a = IntMatrix::from_rows(&m);
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        for w in s.diag.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (w[1].clone() % &w[0]).is_zero());
        }
    }

    #[test]
    fn lattice_coordinates_round_trip(gens in small_matrix(2, 3), c in prop::collection::vec(-5i64..=5, 2)) {
        let gens: Vec<Vec<Int>> = gens.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let l = LatticeBasis::generated_by(3, &gens);
        let x: Vec<Rat> = (0..3)
            .map(|j| gens.iter().zip(&c).map(|(g, &k)| Rat::from_integer(&g[j] * k)).fold(Rat::zero(), |a, b| a + b))
            .collect();
        prop_assert!(l.contains(&x));
        let co = l.coords(&x).unwrap();
        let back: Vec<Rat> = (0..3)
            .map(|j| l.rows.iter().zip(&co).map(|(r, k)| Rat::from_integer(r[j].clone()) * k).fold(Rat::zero(), |a, b| a + b))
            .collect();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn cyclotomic_ring_laws(a in prop::collection::vec(-3i64..=3, 6), b in prop::collection::vec(-3i64..=3, 4), n in 1usize..9) {
        let x = Cyclo::from_coeffs(n, a.iter().map(|&v| rat(v)).collect());
        let y = Cyclo::from_coeffs(2 * n, b.iter().map(|&v| rat(v)).collect());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &x.conj()).conj(), &x * &x.conj());
        prop_assert_eq!(&x * &Cyclo::one(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groups_are_closed_and_classes_partition(seed in 0u64..100_000) {
        let inst = random(seed);
        let g = &inst.group;
        prop_assert_eq!(g.class_of(0), 0);
        prop_assert_eq!(g.class_sizes()[0], 1);
        prop_assert_eq!(g.class_sizes().iter().sum::<usize>(), g.order());
        let exp = (0..g.order()).fold(1usize, |e, x| e.lcm(&g.element_order(x)));
        prop_assert_eq!(g.order() % exp, 0);
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(a, g.inverse(a)), 0);
            prop_assert!(g.element(a).linear().det().abs().is_one());
            for b in 0..g.order() {
                prop_assert!(g.mul(a, b) < g.order());
            }
        }
    }

    #[test]
    fn det_identity_and_pole_order(seed in 0u64..100_000) {
        let inst = random(seed);
        let g = &inst.group;
        for c in 0..inst.num_classes() {
            let e = g.element(g.class_rep(c));
            let lin = eqehrhart::group_action::char_poly(&e.linear()).reversed();
            prop_assert_eq!(e.det_series().clone(), &Poly::from_ints(&[1, -1]) * &lin);
            prop_assert_eq!(e.det_series().coeff(0), Rat::one());
            let mult = e.char_poly_tilde().unwrap().mult.get(&1).copied().unwrap_or(0);
            prop_assert_eq!(mult, inst.fixed_polytope(c).unwrap().dim() + 1);
        }
    }

    #[test]
    fn fixed_polytopes_of_conjugates_correspond(seed in 0u64..100_000) {
        let inst = random(seed);
        let g = &inst.group;
        for x in 0..g.order() {
            let fx = inst.polytope.fixed_polytope(g, x).unwrap();
            for h in 0..g.order() {
                let y = g.mul(g.mul(h, x), g.inverse(h));
                let fy = inst.polytope.fixed_polytope(g, y).unwrap();
                let mut moved: Vec<Vec<Rat>> = fx.vertices().iter().map(|v| g.element(h).apply(v)).collect();
                let mut want = fy.vertices().to_vec();
                moved.sort();
                want.sort();
                prop_assert_eq!(moved, want);
            }
        }
    }

    #[test]
    fn frobenius_reciprocity_on_cyclic_subgroups(seed in 0u64..100_000, pick in 0usize..64) {
        let inst = random(seed);
        let g = &inst.group;
        let table = CharacterTable::for_group(g).unwrap();
        let x = pick % g.order();
        let mut sub = vec![0];
        let mut y = x;
        while y != 0 {
            sub.push(y);
            y = g.mul(y, x);
        }
        sub.sort_unstable();
        let k = sub.len();
        let phi: Vec<Cyclo> = sub.iter().map(|&s| {
            let j = (1..=k).find(|&j| (0..j).fold(0, |acc, _| g.mul(acc, x)) == s).unwrap_or(0);
            Cyclo::root(k, j as i64)
        }).collect();
        let ind = induce(g, &sub, &phi).unwrap();
        let twice = induce(g, &sub, &phi.iter().map(|v| v + v).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(twice, ind.add(&ind));
        for psi in &table.chars {
            let lhs = inner_product(g, &ind, psi);
            let res = restrict(g, &sub, psi).unwrap();
            let rhs = phi.iter().zip(&res).fold(Cyclo::zero(), |s, (a, b)| &s + &(a * &b.conj()))
                .scale(&Rat::new(Int::one(), Int::from(k)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hstar_at_identity_is_classical(seed in 0u64..100_000) {
        let inst = random(seed);
        let h = hstar(&inst).unwrap();
        let id = h.per_class[inst.group.class_of(0)].as_polynomial().expect("classical h* is a polynomial");
        prop_assert_eq!(id.coeff(0), Rat::one());
        prop_assert!(id.coeffs().iter().all(|c| c.is_integer() && !c.is_negative()));
        prop_assert!(id.degree().unwrap_or(0) <= inst.dim());
        let vol = id.coeffs().iter().fold(Rat::zero(), |a, b| a + b);
        prop_assert_eq!(vol, Rat::from_integer(inst.polytope.normalized_volume()));
    }

    #[test]
    fn low_coefficients_of_hstar_n_count_points(seed in 0u64..100_000, n in 2usize..4) {
        let inst = random(seed);
        let coeffs = hstar_n(&inst, n).unwrap().coefficients(n);
        for (m, c) in coeffs.iter().enumerate().take(n) {
            prop_assert_eq!(c, &equivariant_l(&inst, m as u64).unwrap());
        }
    }

    #[test]
    fn orbit_pull_triangulations_pass_every_check(seed in 0u64..100_000) {
        let inst = random(seed);
        let n = inst.group.order() as u64;
        let t = invariant_triangulation(&inst.polytope, &inst.group, n).unwrap();
        prop_assert!(check_triangulation(&t, &inst.polytope, &inst.group, n).is_ok());
        let back = PolyComplex::from_json(&t.to_json(Some(&inst.group))).unwrap();
        prop_assert_eq!(back.cells(), t.cells());
    }

    #[test]
    fn json_round_trips(seed in 0u64..100_000) {
        let raw = corpus::random_instance(seed);
        prop_assert_eq!(RawInstance::from_json(&raw.to_json()).unwrap(), raw.clone());
        let inst = Instance::from_raw(raw).unwrap();
        let h = hstar(&inst).unwrap();
        let j = SeriesJson::new(&inst, &h, Some(6)).unwrap();
        let back: SeriesJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        prop_assert_eq!(&back, &j);
        for (a, b) in back.to_series().per_class.iter().zip(&h.per_class) {
            prop_assert_eq!(a.reduced(), b.reduced());
        }
        let chi = ClassFunction::regular(&inst.group);
        let text = serde_json::to_string(&chi).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClassFunction>(&text).unwrap(), chi);
    }
}

#[test]
fn built_in_tables_are_orthonormal() {
    for name in ["sym3-prism", "sym4-prism", "permutahedron-3", "octahedron", "klein-cube"] {
        let inst = Instance::from_raw(corpus::by_name(name).unwrap()).unwrap();
        let (g, t) = (&inst.group, inst.table.as_ref().unwrap());
        let mut squares = Int::zero();
        for (i, a) in t.chars.iter().enumerate() {
            for (j, b) in t.chars.iter().enumerate() {
                let want = if i == j { Cyclo::one() } else { Cyclo::zero() };
                assert_eq!(inner_product(g, a, b), want, "{name}: {} and {}", t.names[i], t.names[j]);
            }
            let d = a.degree(g).to_integer().unwrap();
            squares += &d * &d;
        }
        assert_eq!(squares, Int::from(g.order()), "{name}");
    }
}
