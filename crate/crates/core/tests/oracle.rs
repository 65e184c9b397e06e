use kron_core::repkit::{
    find_indecomposable, find_quasi_length_two, gr_measure_oracle, gr_submodules, in_b,
    is_indecomposable, is_piling, naive_measure, run_oracle, verify_certificate, CanonicalKind,
    GrCertificate, OracleConfig, PrimeField, Rep, RepError,
};
use kron_core::{DimVec, GrMeasure, KroneckerContext, PositionClass, RegularCoord, SymbolicEngine};

fn ctx() -> KroneckerContext {
    KroneckerContext::new(3).unwrap()
}

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn m(xs: &[u64]) -> GrMeasure {
    GrMeasure::from_u64s(xs).unwrap()
}

fn canonical(kind: CanonicalKind) -> Rep {
    Rep::build_canonical(ctx(), f2(), &kind).unwrap()
}

fn one_one() -> Rep {
    canonical(CanonicalKind::OneC {
        columns: vec![vec![1], vec![1], vec![0]],
    })
}

fn cfg() -> OracleConfig {
    OracleConfig::default()
}

#[test]
fn oracle_matches_closed_forms() {
    let engine = SymbolicEngine::new(ctx());
    let (p2, _) = gr_measure_oracle(&canonical(CanonicalKind::P2), &cfg()).unwrap();
    assert_eq!(p2, engine.preprojective_measure(2).unwrap());
    let (x, _) = gr_measure_oracle(&one_one(), &cfg()).unwrap();
    assert_eq!(
        x,
        engine.family_measure(RegularCoord::new(1, 0, 1)).unwrap()
    );
    let (q1, cert) = gr_measure_oracle(&canonical(CanonicalKind::Q1), &cfg()).unwrap();
    assert_eq!(q1, m(&[1, 2, 3, 4]));
    assert_eq!(cert.gr_submodule_class, Some(PositionClass::Regular));
}

#[test]
fn gr_submodules_of_small_modules() {
    let p2 = canonical(CanonicalKind::P2);
    let subs = gr_submodules(&p2, &cfg()).unwrap();
    // every sink line of F_2^3 is a copy of P_1
    assert_eq!(subs.len(), 7);
    assert!(subs.iter().all(|u| u.dim() == DimVec::new(0u32, 1u32)));
    for u in &subs {
        assert_eq!(p2.quotient(u).unwrap().dim(), DimVec::new(1u32, 2u32));
        assert!(is_piling(u, &p2, &cfg()).unwrap());
    }

    let x = one_one();
    let subs = gr_submodules(&x, &cfg()).unwrap();
    assert_eq!(subs.len(), 1);
    assert_eq!(subs[0].dim(), DimVec::new(0u32, 1u32));
    assert_eq!(x.quotient(&subs[0]).unwrap().dim(), DimVec::new(1u32, 0u32));

    // the sink of Q_1 is a copy of P_1
    let q1 = canonical(CanonicalKind::Q1);
    let sink_line = kron_core::repkit::SubRep {
        source: kron_core::repkit::Subspace::zero(3),
        sink: kron_core::repkit::Subspace::full(1),
    };
    assert!(is_piling(&sink_line, &q1, &cfg()).unwrap());
}

#[test]
fn quasi_length_two_module() {
    let q = find_quasi_length_two(ctx(), f2(), 1, 1, 500, 1 << 20).unwrap();
    let table = run_oracle(&q.rep, &cfg()).unwrap();
    assert_eq!(table.measure(), m(&[1, 2, 9]));
    let subs = table.gr_submodules();
    assert!(!subs.is_empty());
    for u in &subs {
        assert_eq!(u.dim(), DimVec::new(1u32, 1u32));
        assert!(is_piling(u, &q.rep, &cfg()).unwrap());
        let quotient = q.rep.quotient(u).unwrap();
        assert_eq!(quotient.dim(), DimVec::new(2u32, 5u32));
        assert_eq!(is_indecomposable(&quotient, 1 << 20), Ok(true));
    }
    assert!(!in_b(&q.rep, &cfg()).unwrap());
}

#[test]
fn membership_in_b() {
    assert!(in_b(&one_one(), &cfg()).unwrap());
    let (r, _) = find_indecomposable(ctx(), f2(), 2, 5, 4, 200, 1 << 20).unwrap();
    assert!(in_b(&r, &cfg()).unwrap());
    assert!(matches!(
        in_b(&canonical(CanonicalKind::P2), &cfg()),
        Err(RepError::InvalidParameters(_))
    ));
}

#[test]
fn certificates_verify_and_round_trip() {
    let (r, _) = find_indecomposable(ctx(), f2(), 3, 8, 1, 1000, 1 << 20).unwrap();
    let (mu, cert) = gr_measure_oracle(&r, &cfg()).unwrap();
    assert_eq!(mu, m(&[1, 4, 11]));
    verify_certificate(&r, &cert, 1 << 20).unwrap();
    let back = GrCertificate::from_json(&cert.to_json(), &r).unwrap();
    assert_eq!(back, cert);

    let mut broken = cert.clone();
    broken.chain.swap(0, 1);
    assert!(verify_certificate(&r, &broken, 1 << 20).is_err());
}

#[test]
fn decomposable_input_is_rejected() {
    let p1 = canonical(CanonicalKind::P1);
    let sq = p1.direct_sum(&p1).unwrap();
    assert!(matches!(
        gr_measure_oracle(&sq, &cfg()),
        Err(RepError::NotIndecomposable(_))
    ));
}

#[test]
fn dp_agrees_with_naive_chains() {
    let mut compared = 0;
    for p in [2u32, 3] {
        let f = PrimeField::new(p).unwrap();
        for a in 0..=5usize {
            for b in 0..=5 - a {
                if a + b == 0 {
                    continue;
                }
                for seed in 0..6u64 {
                    let r = Rep::random(ctx(), f.clone(), a, b, seed + 100 * p as u64);
                    // large End algebras (e.g. all arrows zero) are never local here
                    if !matches!(is_indecomposable(&r, 1 << 20), Ok(true)) {
                        continue;
                    }
                    let dp = run_oracle(&r, &cfg()).unwrap().measure();
                    assert_eq!(dp, naive_measure(&r, &cfg()).unwrap(), "{p} {a} {b} {seed}");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 20, "only {compared} indecomposables sampled");
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let (r, _) = find_indecomposable(ctx(), f2(), 3, 8, 1, 1000, 1 << 20).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let t = run_oracle(&r, &cfg()).unwrap();
                (t.measure(), t.certificate().to_json(), t.gr_submodules())
            })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn rep_json_round_trip() {
    for seed in 0..100 {
        let p = [2, 3, 5][seed as usize % 3];
        let r = Rep::random(ctx(), PrimeField::new(p).unwrap(), 2, 3, seed);
        assert_eq!(Rep::from_json_str(&r.to_json_string()).unwrap(), r);
    }
    assert!(matches!(
        Rep::from_json_str(r#"{"n":3,"p":4,"dim":[1,1],"mats":[[1],[1],[0]]}"#),
        Err(RepError::NotPrime(4))
    ));
    assert!(Rep::from_json_str(r#"{"n":3,"p":2,"dim":[1,2],"mats":[[1],[1],[0]]}"#).is_err());
    assert!(Rep::from_json_str(r#"{"n":3,"p":2,"dim":[1,1],"mats":[[2],[1],[0]]}"#).is_err());
}
