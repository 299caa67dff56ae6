use stiefel_xform::fields::ScalarField;
use stiefel_xform::linalg::Frame;
use stiefel_xform::manifold::{sample_orthogonal, sample_stiefel};
use stiefel_xform::mc::{MCConfig, MCEstimate, RandomSource};
use stiefel_xform::transforms::{self, Completion, Transform, TransformKind};
use stiefel_xform::Error;

fn agree(a: &MCEstimate, b: &MCEstimate) -> bool {
    (a.mean - b.mean).abs() <= 5.0 * (a.se * a.se + b.se * b.se).sqrt()
}

fn ops() -> Vec<Transform> {
    vec![
        Transform::funk(5, 2, 2).unwrap(),
        Transform::dual_funk(5, 1, 3).unwrap(),
        Transform::cosine(5, 2, 3, 2.5).unwrap(),
        Transform::dual_cosine(5, 1, 2, 1.5).unwrap(),
        Transform::sine(5, 1, 2, 2.0).unwrap(),
        Transform::dual_sine(5, 2, 2, 3.5).unwrap(),
        Transform::mcos(4, 1, 2.0).unwrap(),
        Transform::qsin(4, 2, 2.5).unwrap(),
        Transform::comp_radon(5, 1, 3).unwrap(),
    ]
}

#[test]
fn rotation_equivariance() {
    let mut rng = RandomSource::new(5, 0).rng();
    let cfg = MCConfig::new(40_000, 21);
    for t in ops() {
        let (n, fm) = t.field_shape();
        let (_, pm) = t.point_shape();
        let f = ScalarField::polynomial(n, fm, 7).unwrap();
        let g = sample_orthogonal(n, &mut rng);
        let u = sample_stiefel(n, pm, &mut rng);
        let moved = t.apply(&f, &u.rotate(&g), &cfg).unwrap();
        let pulled = t.apply(&f.compose_rotation(&g), &u, &cfg.fork(1)).unwrap();
        assert!(agree(&moved, &pulled), "{:?}: {moved:?} vs {pulled:?}", t.kind());
    }
}

#[test]
fn completion_choice_does_not_matter() {
    let mut rng = RandomSource::new(6, 0).rng();
    let cfg = MCConfig::new(40_000, 22);
    for t in ops() {
        let (n, fm) = t.field_shape();
        let (_, pm) = t.point_shape();
        let f = ScalarField::polynomial(n, fm, 8).unwrap();
        let u = sample_stiefel(n, pm, &mut rng);
        let a = t.apply(&f, &u, &cfg).unwrap();
        let b = t
            .clone()
            .with_completion(Completion::Randomized { seed: 3 })
            .apply(&f, &u, &cfg.fork(2))
            .unwrap();
        assert!(agree(&a, &b), "{:?}: {a:?} vs {b:?}", t.kind());
    }
}

#[test]
fn right_action_on_the_point_is_absorbed() {
    let mut rng = RandomSource::new(7, 0).rng();
    let cfg = MCConfig::new(40_000, 23);
    let t = Transform::cosine(5, 2, 3, 2.5).unwrap();
    let f = ScalarField::polynomial(5, 2, 5).unwrap();
    let u = sample_stiefel(5, 3, &mut rng);
    let gamma = sample_orthogonal(3, &mut rng);
    let a = t.apply(&f, &u, &cfg).unwrap();
    let b = t.apply(&f, &u.right_act(&gamma), &cfg.fork(3)).unwrap();
    assert!(agree(&a, &b), "{a:?} vs {b:?}");
}

#[test]
fn sine_agrees_with_its_complement_form() {
    let f = ScalarField::polynomial(6, 2, 4).unwrap();
    let u = sample_stiefel(6, 3, &mut RandomSource::new(8, 0).rng());
    let cfg = MCConfig::new(60_000, 24);
    let a = transforms::sine(&f, &u, 2.5, &cfg).unwrap();
    let b = transforms::sine_via_complement(&f, &u, 2.5, &cfg.fork(1)).unwrap();
    assert!(agree(&a, &b), "{a:?} vs {b:?}");
}

#[test]
fn deterministic_for_a_fixed_seed_and_shard_independent() {
    let f = ScalarField::polynomial(5, 1, 2).unwrap();
    let u = Frame::canonical(5, 2);
    let cfg = MCConfig::new(20_000, 31);
    let a = transforms::cosine(&f, &u, 2.0, &cfg).unwrap();
    let b = transforms::cosine(&f, &u, 2.0, &cfg.clone().with_shards(4)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn divergent_exponents_are_rejected_unless_allowed() {
    let err = Transform::cosine(5, 2, 3, 0.5).unwrap_err();
    assert!(matches!(err, Error::Admissibility(ref s) if s.contains("alpha > m-1")), "{err}");
    assert!(Transform::new(TransformKind::Cosine, 5, 2, 3, Some(0.5), None, true).is_ok());
    assert!(Transform::funk(4, 2, 3).is_err());
}
