//! Acceptance suite: one test per criterion, each printing a pass line with
//! its counts and timing (run with `--nocapture` to see them). Every check is
//! exact — no tolerances anywhere.

use std::time::{Duration, Instant};

use charvar_core::charvar::{
    circle_trace, classify_stratum, find_conjugator, is_irreducible, kostov_generic,
    kostov_witness, rep_validate, very_generic, very_generic_witness, GenericityWitness, Problem,
    Segment,
};
use charvar_core::dual_complex::{
    caution_example, cone, from_facets, is_homology_sphere, mprime_boundary_model,
    q_boundary_model, reduced_homology, Cell, DeltaComplex,
};
use charvar_core::exact_linear::{Mat2, ProjPoint, Scalar};
use charvar_core::fenchel_nielsen::{
    fn_decode, fn_encode, pants_matrices, q_commutant, qpoint_from_commutant, sample_fn, t_matrix,
    u_matrix, unstable_split, unstable_unsplit, FnError, QPoint, SplitInput,
};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn draw(rng: &mut ChaCha8Rng, height: u32) -> Scalar {
    let span = 2 * u64::from(height) + 1;
    let numer = (rng.next_u64() % span) as i64 - i64::from(height);
    let denom = 1 + (rng.next_u64() % u64::from(height)) as i64;
    Scalar::fraction(numer, denom).expect("positive denominator")
}

fn draw_class(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let c = draw(rng, 9);
        if !c.is_zero() && !c.is_one() && !(-&c).is_one() {
            return c;
        }
    }
}

fn draw_invertible(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let m = Mat2::new([[draw(rng, 6), draw(rng, 6)], [draw(rng, 6), draw(rng, 6)]]);
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn assert_within(elapsed: Duration, bound: Duration, what: &str) {
    assert!(
        elapsed < bound,
        "{what} took {elapsed:?}, bound is {bound:?}"
    );
}

#[test]
fn criterion_1_pants_matrix_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let c = draw_class(&mut rng);
        let t_prev = draw(&mut rng, 9);
        let t = draw(&mut rng, 9);
        let pm = pants_matrices(&t_prev, &t, &c).expect("valid class");
        assert_eq!(pm.r().trace(), t);
        assert_eq!(pm.rprev().trace(), t_prev);
        assert!(pm.r().det().is_one());
        let u_mat = u_matrix(pm.u());
        let u_inv = u_matrix(&-pm.u());
        assert_eq!(&(&(&u_inv * &t_matrix(&t)) * &u_mat), pm.r());
        let d = Mat2::diag(&c, &Scalar::one());
        let lhs = &(&(&u_mat * pm.a()) * &u_inv) * &t_matrix(&t);
        let rhs = t_matrix(&t_prev).conjugate_by(&d).unwrap();
        assert_eq!(lhs, rhs);
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 1");
    println!("acceptance criterion 1: pass — 200/200 pants-matrix identities exact in {elapsed:?}");
}

#[test]
fn criterion_2_commutant_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let qp = loop {
            let t = draw(&mut rng, 9);
            let p = draw(&mut rng, 9);
            let q = draw(&mut rng, 9);
            let Ok(point) = ProjPoint::new(p, q) else {
                continue;
            };
            if let Ok(qp) = QPoint::new(t, point) {
                break qp;
            }
        };
        let q_mat = q_commutant(&qp);
        let t_mat = t_matrix(qp.t());
        assert_eq!(q_mat.rep() * &t_mat, &t_mat * q_mat.rep());
        assert_eq!(qpoint_from_commutant(qp.t(), &q_mat).unwrap(), qp);
    }
    let mut invalid = 0;
    while invalid < 50 {
        let point = loop {
            if let Ok(p) = ProjPoint::new(draw(&mut rng, 9), draw(&mut rng, 9)) {
                break p;
            }
        };
        let result = if invalid % 2 == 0 {
            // degenerate trace
            let t = if invalid % 4 == 0 {
                Scalar::from_int(2)
            } else {
                Scalar::from_int(-2)
            };
            QPoint::new(t, point)
        } else {
            // a point on the vanishing conic of t = s + 1/s: [−s : 1]
            let s = draw_class(&mut rng);
            let t = &s + &s.inv().unwrap();
            let on_conic = ProjPoint::new(-&s, Scalar::one()).unwrap();
            QPoint::new(t, on_conic)
        };
        assert!(
            matches!(
                result,
                Err(FnError::DegenerateTrace { .. }) | Err(FnError::FormVanishes { .. })
            ),
            "degenerate point must be rejected"
        );
        invalid += 1;
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 2");
    println!(
        "acceptance criterion 2: pass — 200 valid + 50 rejected coordinate points in {elapsed:?}"
    );
}

#[test]
fn criterion_3_coordinate_round_trips() {
    let start = Instant::now();
    let trials_per_k = [(4usize, 40u64), (5, 25), (6, 15), (7, 12), (8, 10)];
    let mut total = 0;
    for (k, trials) in trials_per_k {
        let problem = Problem::from_ints(&PRIMES[..k]).unwrap();
        for trial in 0..trials {
            let seed = 1000 * k as u64 + trial;
            let coords = sample_fn(&problem, seed, 8).unwrap();
            let rep = fn_decode(&coords, &problem).unwrap();

            rep_validate(&rep, &problem).unwrap();
            for i in 2..=k - 2 {
                assert_eq!(
                    &circle_trace(&rep, i).unwrap(),
                    coords.coords()[i - 2].t(),
                    "prefix trace must equal the coordinate"
                );
            }
            let stratum = classify_stratum(&rep, &problem).unwrap();
            assert!(stratum.in_open_stratum(), "decode output must be open");
            assert!(is_irreducible(&rep));
            assert_eq!(fn_encode(&rep, &problem).unwrap(), coords);

            // decode ∘ encode on a conjugated representative
            let mut grng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
            let g = draw_invertible(&mut grng);
            let conj = rep.conjugated(&g).unwrap();
            let back = fn_decode(&fn_encode(&conj, &problem).unwrap(), &problem).unwrap();
            let conjugator = find_conjugator(&back, &conj).expect("orbits must match");
            for (m_back, m_conj) in back.matrices().iter().zip(conj.matrices()) {
                assert_eq!(
                    &(conjugator.rep() * m_back),
                    &(m_conj * conjugator.rep()),
                    "conjugator must intertwine the tuples"
                );
            }
            total += 1;
        }
    }
    assert!(total >= 100);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(30), "criterion 3");
    println!("acceptance criterion 3: pass — {total}/{total} exact round trips across k=4..8 in {elapsed:?}");
}

#[test]
fn criterion_4_distinct_coordinates_decode_to_distinct_orbits() {
    let start = Instant::now();
    let problem = Problem::from_ints(&PRIMES[..4]).unwrap();
    let mut pairs = 0;
    let mut seed = 0u64;
    while pairs < 50 {
        let a = sample_fn(&problem, seed, 8).unwrap();
        let b = sample_fn(&problem, seed + 1, 8).unwrap();
        seed += 2;
        if a == b {
            continue;
        }
        let rep_a = fn_decode(&a, &problem).unwrap();
        let rep_b = fn_decode(&b, &problem).unwrap();
        assert!(
            find_conjugator(&rep_a, &rep_b).is_none(),
            "distinct coordinates must give non-conjugate tuples"
        );
        pairs += 1;
    }
    let elapsed = start.elapsed();
    println!("acceptance criterion 4: pass — 50/50 distinct-coordinate pairs non-conjugate in {elapsed:?}");
}

#[test]
fn criterion_5_unstable_splitting_round_trips() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 100 {
        let b = draw_class(&mut rng);
        let c = loop {
            let c = draw(&mut rng, 9);
            if !c.is_zero() {
                break c;
            }
        };
        let b_prev = c.div(&b).unwrap();
        if b_prev.is_zero() || b_prev.is_one() || (-&b_prev).is_one() {
            continue;
        }
        let y = draw(&mut rng, 9);
        let a_i = Mat2::new([[c.clone(), Scalar::zero()], [y.clone(), c.inv().unwrap()]]);
        let r = Mat2::diag(&b.inv().unwrap(), &b);
        let fill: Vec<Mat2> = (0..(done % 3)).map(|_| draw_invertible(&mut rng)).collect();
        let prefix = fill.iter().fold(Mat2::identity(), |acc, m| &acc * m);
        let closing = &prefix.inverse().unwrap() * &(&a_i * &r).inverse().unwrap();
        let mut tuple = fill;
        tuple.push(closing);
        tuple.push(a_i);
        let inp = SplitInput::new(tuple, b_prev.clone(), b.clone(), c.clone()).unwrap();

        let (y2, tuple2, rprev) = unstable_split(&inp);
        assert_eq!(y2, y);
        let product = tuple2.iter().fold(Mat2::identity(), |acc, m| &acc * m);
        assert!(
            (&product * &rprev).is_identity(),
            "transformed relation must hold exactly"
        );
        assert_eq!(
            unstable_unsplit(&y2, &tuple2, &b_prev, &b, &c).unwrap(),
            inp
        );
        done += 1;
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 5");
    println!("acceptance criterion 5: pass — 100/100 splitting round trips exact in {elapsed:?}");
}

/// Recomputes the signed product a witness claims, for independent checking.
fn witness_product(classes: &[Scalar], witness: &GenericityWitness) -> Scalar {
    let segment: &[Scalar] = match witness.segment {
        Segment::Prefix(i) => &classes[..i],
        Segment::Suffix(i) => &classes[i - 1..],
    };
    segment
        .iter()
        .zip(&witness.signs)
        .fold(Scalar::one(), |acc, (c, sign)| {
            if *sign == 1 {
                &acc * c
            } else {
                &acc * &c.inv().unwrap()
            }
        })
}

#[test]
fn criterion_6_genericity_examples() {
    let start = Instant::now();
    let classes =
        |ints: &[i64]| -> Vec<Scalar> { ints.iter().map(|n| Scalar::from_int(*n)).collect() };

    let generic = classes(&[2, 3, 5, 7]);
    assert!(very_generic(&generic).unwrap());
    assert!(kostov_generic(&generic).unwrap());

    let kostov_fail = classes(&[2, 2, 2, 8]);
    assert!(!kostov_generic(&kostov_fail).unwrap());
    let signs = kostov_witness(&kostov_fail).unwrap().expect("witness");
    let product = kostov_fail
        .iter()
        .zip(&signs)
        .fold(Scalar::one(), |acc, (c, sign)| {
            if *sign == 1 {
                &acc * c
            } else {
                &acc * &c.inv().unwrap()
            }
        });
    assert!(product.is_one(), "witness product must be exactly 1");

    let prefix_fail = vec![
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::fraction(1, 6).unwrap(),
        Scalar::from_int(5),
    ];
    assert!(!very_generic(&prefix_fail).unwrap());
    let witness = very_generic_witness(&prefix_fail)
        .unwrap()
        .expect("witness");
    let value = witness_product(&prefix_fail, &witness);
    assert!(value.is_one() || (-&value).is_one());
    assert_eq!(value, witness.value);

    let minus_fail = classes(&[2, -2, 3, 5]);
    assert!(!very_generic(&minus_fail).unwrap());
    let witness = very_generic_witness(&minus_fail).unwrap().expect("witness");
    assert_eq!(witness_product(&minus_fail, &witness), witness.value);

    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 6: pass — genericity verdicts and witnesses exact in {elapsed:?}"
    );
}

#[test]
fn criterion_7_boundary_models_are_homology_spheres() {
    let start = Instant::now();
    assert!(is_homology_sphere(&q_boundary_model(), 1));
    for k in [4usize, 5, 6] {
        let model = mprime_boundary_model(k).unwrap();
        let n = 2 * (k - 3) - 1;
        assert!(
            is_homology_sphere(&model, n),
            "model for k={k} must be a homology {n}-sphere"
        );
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 7");
    println!("acceptance criterion 7: pass — boundary models certified as homology spheres (dims 1, 3, 5) in {elapsed:?}");
}

#[test]
fn criterion_8_homology_engine_regression() {
    let start = Instant::now();
    use charvar_core::dual_complex::HomologyGroup;

    let hollow = from_facets(&[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
    assert!(is_homology_sphere(&hollow, 1));

    let tetra = from_facets(&[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]).unwrap();
    assert!(is_homology_sphere(&tetra, 2));

    let rp2 = DeltaComplex::new(vec![
        vec![Cell::vertex("v0"), Cell::vertex("v1")],
        vec![
            Cell::new("a", vec!["v1".into(), "v0".into()]),
            Cell::new("b", vec!["v1".into(), "v0".into()]),
            Cell::new("c", vec!["v1".into(), "v1".into()]),
        ],
        vec![
            Cell::new("U", vec!["c".into(), "a".into(), "b".into()]),
            Cell::new("L", vec!["c".into(), "b".into(), "a".into()]),
        ],
    ])
    .unwrap();
    assert_eq!(
        reduced_homology(&rp2).reduced(),
        [HomologyGroup::new(1, 0, vec![2])]
    );

    for complex in [&hollow, &tetra, &rp2] {
        assert!(reduced_homology(&cone(complex)).is_trivial());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let n_facets = 1 + (rng.next_u64() % 3) as usize;
        let facets: Vec<Vec<i64>> = (0..n_facets)
            .map(|_| {
                let size = 1 + (rng.next_u64() % 3) as usize;
                (0..size).map(|_| 1 + (rng.next_u64() % 6) as i64).collect()
            })
            .collect();
        let complex = from_facets(&facets).unwrap();
        let homology_euler: i64 = 1 + reduced_homology(&complex)
            .reduced()
            .iter()
            .map(|g| {
                let r = g.rank() as i64;
                if g.dim() % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum::<i64>();
        assert_eq!(complex.euler_characteristic(), homology_euler);
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(5), "criterion 8");
    println!("acceptance criterion 8: pass — homology regressions (spheres, torsion, cones, 100 Euler checks) in {elapsed:?}");
}

#[test]
fn criterion_9_caution_pair_distinguishes_compactifications() {
    let (plane_model, punctured_model) = caution_example();
    let p1 = reduced_homology(&plane_model);
    let p2 = reduced_homology(&punctured_model);
    assert!(p1.is_trivial());
    assert!(is_homology_sphere(&punctured_model, 1));
    assert_ne!(p1, p2);
    println!("acceptance criterion 9: pass — empty profile vs homology circle, profiles differ");
}
