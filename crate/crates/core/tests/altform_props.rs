use cubezeta::altforms::{fuse, AltForm4, AltFormPair};
use cubezeta::arith::Discriminant;
use cubezeta::cubes::{construct_cube, Cube, CubeInvariants, Slicing};
use cubezeta::linalg::{mat4_identity, mat4_mul, Mat2, Mat4};
use cubezeta::qforms::{enumerate_class_group, FormClass};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Determinant as a sum over the 24 permutations.
fn leibniz(m: &Mat4) -> BigRational {
    let mut total = BigRational::zero();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).any(|i| (i + 1..4).any(|j| p[i] == p[j])) {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    let term = (0..4).fold(q(1), |acc, i| acc * &m[i][p[i]]);
                    if inversions % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
            }
        }
    }
    total
}

fn alt_form(bound: i64) -> impl Strategy<Value = AltForm4> {
    prop::array::uniform6(-bound..=bound).prop_map(AltForm4::from_i64)
}

fn mat4(bound: i64) -> impl Strategy<Value = Mat4> {
    prop::array::uniform4(prop::array::uniform4(-bound..=bound))
        .prop_map(|rows| std::array::from_fn(|i| std::array::from_fn(|j| q(rows[i][j]))))
}

/// Products of elementary matrices `I + t E_ij`, all of determinant 1.
fn sl4_word() -> impl Strategy<Value = Mat4> {
    prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8).prop_map(|steps| {
        steps.into_iter().fold(mat4_identity(), |g, (i, j, t)| {
            let mut e = mat4_identity();
            if i != j {
                e[i][j] = q(t);
            }
            mat4_mul(&g, &e)
        })
    })
}

fn sl2_word() -> impl Strategy<Value = Mat2<BigRational>> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 0..6).prop_map(|steps| {
        steps.into_iter().fold(Mat2::identity(), |g, (upper, t)| {
            let step = if upper {
                Mat2::new(q(1), q(t), q(0), q(1))
            } else {
                Mat2::new(q(1), q(0), q(t), q(1))
            };
            g.mul(&step)
        })
    })
}

fn pair(bound: i64) -> impl Strategy<Value = AltFormPair> {
    (alt_form(bound), alt_form(bound)).prop_map(|(m, n)| AltFormPair::new(m, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pfaffian_squares_to_det(f in alt_form(30)) {
        let pf = f.pfaffian();
        prop_assert_eq!(&pf * &pf, leibniz(&f.to_matrix()));
    }

    #[test]
    fn pfaffian_is_relatively_invariant(f in alt_form(10), g in mat4(4)) {
        prop_assert_eq!(f.congruence(&g).pfaffian(), leibniz(&g) * f.pfaffian());
    }

    #[test]
    fn qform_squared_is_det(f in pair(10), u in -5i64..=5, v in -5i64..=5) {
        let form = f.qform();
        let value = &form.a * q(u * u) + &form.b * q(u * v) + &form.c * q(v * v);
        let pencil = f.first.combine(&q(u), &f.second, &q(-v)).to_matrix();
        prop_assert_eq!(&value * &value, leibniz(&pencil));
    }

    #[test]
    fn fusion_matches_first_slicing(cube in prop::array::uniform8(-50i64..=50)) {
        let cube = Cube::from_i64(cube);
        let f = fuse(&cube);
        prop_assert_eq!(f.qform().to_integral().unwrap(), cube.qform(Slicing::First));
        prop_assert_eq!(f.disc(), BigRational::from_integer(cube.disc()));
        let (disc, p0, p1) = f.invariants_w().unwrap();
        prop_assert_eq!(disc, f.disc());
        prop_assert!(p0.is_zero());
        prop_assert_eq!(p1, BigRational::from_integer(cube.m()));
    }

    #[test]
    fn special_action_preserves_disc(f in pair(8), g1 in sl2_word(), g in sl4_word()) {
        prop_assert_eq!(f.act(&g1, &g).unwrap().disc(), f.disc());
    }
}

#[test]
fn fused_class_map_is_surjective() {
    for d in [-7i64, -15, -23] {
        let disc = Discriminant::new(d).unwrap();
        let classes = enumerate_class_group(disc).unwrap();
        let mut hit: Vec<FormClass> = Vec::new();
        for first in &classes {
            for second in &classes {
                let (q1, q2) = (first.representative(), second.representative());
                let inv = CubeInvariants {
                    disc: d.into(),
                    m: q1.a.clone(),
                    n: q2.a.clone(),
                    x: q1.b.mod_floor(&(BigInt::from(2) * &q1.a)),
                    y: q2.b.mod_floor(&(BigInt::from(2) * &q2.a)),
                };
                let cube = construct_cube(&inv).unwrap();
                assert!(cube.is_projective());
                let class = fuse(&cube).form_class().unwrap();
                assert_eq!(&class, first);
                if !hit.contains(&class) {
                    hit.push(class);
                }
            }
        }
        assert_eq!(hit.len(), classes.len(), "D = {d}");
    }
}
