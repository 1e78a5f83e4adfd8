use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{CertificateClaim, Outcome, Suite};
use crate::clifford::{
    c_parallel, class_is_regular_spread, crossed_pencils_check, double_space_check,
    hyperplane_for_classes, hyperplane_from_form, is_pencil, left_parallel,
    opposite_regulus_parallel_check, parallel_class, parallel_through, plane_C, plane_Cprime,
    points_rank, right_parallel, table1, translation_invariance_check, Parallelism,
};
use crate::error::{Error, Result};
use crate::kleingeom::sample::{random_extension, random_line, random_point, random_point_in};
use crate::kleingeom::{
    complex_from_hyperplane, lines_meet, pencil, perp, pluecker_inverse_vector, regulus_through,
    Bivector, ComplexKind, PencilSection,
};
use crate::linalg::{rank, Subspace};
use crate::qalg::{Algebra, AlgebraCase, AlgebraElement};
use crate::scalars::Field;

/// Random points tried on `T^⊥` when no exact argument applies.
pub const SPREAD_SAMPLES: usize = 1000;
/// Pencils of lines tested against each complex.
pub const PENCILS_PER_TRIAL: usize = 50;

pub(crate) struct Ctx<F: Field> {
    pub alg: Algebra<F>,
    pub p: Parallelism<F>,
    pub pp: Parallelism<F>,
    pub bound: u32,
    /// A line whose points are drawn half of the time; set for mutated
    /// planes, where it is the preimage of the planted quadric point.
    pub focus: Option<Subspace<F>>,
}

impl<F: Field> Ctx<F> {
    pub fn new(alg: Algebra<F>, bound: u32) -> Result<Self> {
        let p = plane_C(&alg)?;
        let pp = plane_Cprime(&alg)?;
        Ok(Ctx {
            alg,
            p,
            pp,
            bound,
            focus: None,
        })
    }

    /// Context for a plane of `P(H∧H)` that is not certified external.
    pub fn mutated(
        alg: Algebra<F>,
        bound: u32,
        plane: Subspace<F>,
        focus: Subspace<F>,
    ) -> Result<Self> {
        let pp = Parallelism::unchecked(perp(&plane)?)?;
        Ok(Ctx {
            alg,
            p: Parallelism::unchecked(plane)?,
            pp,
            bound,
            focus: Some(focus),
        })
    }

    pub fn base_certificates(&self) -> Vec<CertificateClaim> {
        vec![
            CertificateClaim {
                claim: "H is a division algebra".into(),
                level: self.alg.certificate().label(),
            },
            CertificateClaim {
                claim: "C has no point on the Klein quadric".into(),
                level: self.p.certificate().label(),
            },
            CertificateClaim {
                claim: "C' has no point on the Klein quadric".into(),
                level: self.pp.certificate().label(),
            },
        ]
    }

    fn js(&self, s: &Subspace<F>) -> Value {
        s.to_json(self.alg.field())
    }

    fn point(&self, rng: &mut ChaCha8Rng) -> Subspace<F> {
        match &self.focus {
            Some(l) if rng.gen_bool(0.5) => random_point_in(rng, l, self.bound),
            _ => random_point(rng, self.bound),
        }
    }

    fn line(&self, rng: &mut ChaCha8Rng) -> Subspace<F> {
        match &self.focus {
            Some(l) if rng.gen_bool(0.5) => l.clone(),
            _ => random_line(rng, self.bound),
        }
    }
}

/// Turns an error raised while checking `inputs` into a failed trial.
fn guard(inputs: Value, body: impl FnOnce() -> Result<Outcome>) -> Outcome {
    match body() {
        Ok(o) => match o.failure {
            Some(Value::Object(extra)) => {
                let mut w = inputs;
                if let Value::Object(m) = &mut w {
                    m.extend(extra);
                }
                Outcome {
                    failure: Some(w),
                    certs: o.certs,
                }
            }
            Some(other) => Outcome {
                failure: Some(json!({ "inputs": inputs, "detail": other })),
                certs: o.certs,
            },
            None => o,
        },
        Err(e) => {
            let mut w = inputs;
            w["error"] = Value::String(e.to_string());
            Outcome::fail(w)
        }
    }
}

/// Whether a randomized suite has anything to check on this algebra.
pub(crate) fn applies<F: Field>(ctx: &Ctx<F>, suite: Suite) -> bool {
    match suite {
        Suite::CaseBIdentity => ctx.alg.case() == AlgebraCase::B,
        _ => true,
    }
}

pub(crate) fn trial<F: Field>(
    ctx: &Ctx<F>,
    suite: Suite,
    i: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    Ok(match suite {
        Suite::Table1 | Suite::Polarity => {
            return Err(Error::PreconditionFailed(format!(
                "{suite} is an exact suite"
            )))
        }
        Suite::Equivalence => equivalence(ctx, i, rng),
        Suite::Axioms => axioms(ctx, rng),
        Suite::RegularSpread => regular_spread(ctx, rng),
        Suite::DoubleSpace => double_space(ctx, rng),
        Suite::OppositeRegulus => opposite_regulus(ctx, rng),
        Suite::UniqueComplex => unique_complex(ctx, rng),
        Suite::CrossedPencils => crossed_pencils(ctx, i, rng),
        Suite::TranslationInvariance => translation_invariance(ctx, rng),
        Suite::CaseBIdentity => case_b_identity(ctx, i, rng),
        Suite::GeometricHyperplane => geometric_hyperplane(ctx, i, rng),
    })
}

/// The checks of an exact suite, one outcome each.
pub(crate) fn exact<F: Field>(ctx: &Ctx<F>, suite: Suite) -> Vec<Outcome> {
    let c = ctx.p.plane();
    let cp = ctx.pp.plane();
    match suite {
        Suite::Table1 => {
            let (tc, tcp) = table1(&ctx.alg);
            vec![
                Outcome::check(
                    *c == tc,
                    || json!({ "claim": "C", "computed": ctx.js(c), "expected": ctx.js(&tc) }),
                )
                .with_cert("C equals its closed form", "exact".into()),
                Outcome::check(
                    *cp == tcp,
                    || json!({ "claim": "C'", "computed": ctx.js(cp), "expected": ctx.js(&tcp) }),
                )
                .with_cert("C' equals its closed form", "exact".into()),
            ]
        }
        Suite::Polarity => vec![polarity(ctx), char_split(ctx)],
        _ => Vec::new(),
    }
}

fn polarity<F: Field>(ctx: &Ctx<F>) -> Outcome {
    guard(json!({ "claim": "C' = perp(C)" }), || {
        let expected = perp(ctx.p.plane())?;
        Ok(Outcome::check(
            *ctx.pp.plane() == expected,
            || json!({ "C'": ctx.js(ctx.pp.plane()), "perp(C)": ctx.js(&expected) }),
        )
        .with_cert("C' = perp(C)", "exact".into()))
    })
}

fn char_split<F: Field>(ctx: &Ctx<F>) -> Outcome {
    guard(json!({ "claim": "C ∩ perp(C)" }), || {
        let c = ctx.p.plane();
        let cp = perp(c)?;
        let meet = c.meet(&cp)?;
        let expected = match (F::characteristic(), ctx.alg.case()) {
            (2, AlgebraCase::B) => c.clone(),
            (2, _) => {
                let mut v = vec![F::zero(); 6];
                v[0] = ctx.alg.b().clone();
                v[5] = F::one();
                Subspace::span(6, &[v])?
            }
            _ => Subspace::zero(6),
        };
        Ok(Outcome::check(
            meet == expected,
            || json!({ "meet": ctx.js(&meet), "expected": ctx.js(&expected) }),
        )
        .with_cert("C ∩ perp(C) by characteristic", "exact".into()))
    })
}

fn equivalence<F: Field>(ctx: &Ctx<F>, i: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let m = random_line(rng, ctx.bound);
    let c = AlgebraElement::random_nonzero(rng, ctx.bound);
    let kind = match i % 4 {
        0 => "left",
        2 => "right",
        _ => "random",
    };
    let n = match kind {
        "left" => ctx.alg.left_multiply_subspace(&c, &m),
        "right" => ctx.alg.right_multiply_subspace(&m, &c),
        _ => Ok(random_line(rng, ctx.bound)),
    };
    let field = ctx.alg.field();
    let mut inputs = json!({ "kind": kind, "M": ctx.js(&m), "c": c.render(field) });
    guard(inputs.clone(), || {
        let n = n?;
        inputs["N"] = ctx.js(&n);
        let left = left_parallel(&ctx.alg, &m, &n)?;
        let cl = c_parallel(&ctx.p, &m, &n)?;
        let right = right_parallel(&ctx.alg, &m, &n)?;
        let cr = c_parallel(&ctx.pp, &m, &n)?;
        let ok =
            left == cl && right == cr && (kind != "left" || left) && (kind != "right" || right);
        Ok(Outcome::check(ok, || {
            json!({
                "N": ctx.js(&n),
                "left": left, "c_parallel_C": cl,
                "right": right, "c_parallel_Cperp": cr,
            })
        }))
    })
}

fn axioms<F: Field>(ctx: &Ctx<F>, rng: &mut ChaCha8Rng) -> Outcome {
    let pt = ctx.point(rng);
    let m = random_line(rng, ctx.bound);
    let r = ctx.point(rng);
    let inputs = json!({ "p": ctx.js(&pt), "M": ctx.js(&m), "r": ctx.js(&r) });
    guard(inputs, || {
        let p = &ctx.p;
        let n = parallel_through(p, &pt, &m)?;
        let fail = |what: &str| Outcome::fail(json!({ "N": ctx.js(&n), "violated": what }));
        if !n.contains(&pt)? || !c_parallel(p, &m, &n)? {
            return Ok(fail("existence"));
        }
        if m.contains(&pt)? && n != m {
            return Ok(fail("uniqueness through a point of M"));
        }
        let q = loop {
            let q = random_point_in(rng, &n, ctx.bound);
            if q != pt {
                break q;
            }
        };
        if parallel_through(p, &q, &m)? != n {
            return Ok(fail("uniqueness"));
        }
        let o = parallel_through(p, &r, &n)?;
        let ok = c_parallel(p, &m, &m)? && c_parallel(p, &n, &m)? && c_parallel(p, &m, &o)?;
        Ok(Outcome::check(
            ok,
            || json!({ "N": ctx.js(&n), "O": ctx.js(&o), "violated": "equivalence" }),
        ))
    })
}

fn regular_spread<F: Field>(ctx: &Ctx<F>, rng: &mut ChaCha8Rng) -> Outcome {
    let m = random_line(rng, ctx.bound);
    let pt = ctx.point(rng);
    let inputs = json!({ "M": ctx.js(&m), "p": ctx.js(&pt) });
    guard(inputs, || {
        let k = parallel_class(&ctx.p, &m)?;
        if k.solid().dim() != 4 || !k.solid().contains(ctx.p.plane())? {
            return Ok(Outcome::fail(
                json!({ "T": ctx.js(k.solid()), "violated": "C ⊂ T" }),
            ));
        }
        let verdict = class_is_regular_spread(&k, rng, ctx.bound, SPREAD_SAMPLES)?;
        let cert = verdict.certificate.label();
        if !verdict.regular {
            return Ok(Outcome::fail(
                json!({ "T": ctx.js(k.solid()), "violated": "perp(T) external" }),
            )
            .with_cert("perp(T) has no quadric point", cert));
        }
        let members = k.sample_members(rng, ctx.bound, 4);
        for (a, x) in members.iter().enumerate() {
            for y in &members[a + 1..] {
                if x != y && lines_meet(x, y)? {
                    return Ok(Outcome::fail(json!({
                        "X": ctx.js(x), "Y": ctx.js(y), "violated": "disjoint members"
                    })));
                }
            }
        }
        let x = k.member_through(&pt)?;
        let ok = x.contains(&pt)? && k.contains(&x)?;
        Ok(
            Outcome::check(ok, || json!({ "X": ctx.js(&x), "violated": "cover" }))
                .with_cert("perp(T) has no quadric point", cert),
        )
    })
}

fn double_space<F: Field>(ctx: &Ctx<F>, rng: &mut ChaCha8Rng) -> Outcome {
    let (a, b, c) = loop {
        let (a, b, c) = (ctx.point(rng), ctx.point(rng), ctx.point(rng));
        if points_rank(&[&a, &b, &c]).ok() == Some(3) {
            break (a, b, c);
        }
    };
    let inputs = json!({ "p": ctx.js(&a), "q": ctx.js(&b), "r": ctx.js(&c) });
    guard(inputs, || {
        let forward = double_space_check(&ctx.p, &ctx.pp, &a, &b, &c)?;
        let swapped = double_space_check(&ctx.pp, &ctx.p, &a, &b, &c)?;
        Ok(Outcome::check(
            forward && swapped,
            || json!({ "forward": forward, "swapped": swapped }),
        ))
    })
}

fn opposite_regulus<F: Field>(ctx: &Ctx<F>, rng: &mut ChaCha8Rng) -> Outcome {
    let m = random_line(rng, ctx.bound);
    let t = ctx.line(rng);
    let inputs = json!({ "M": ctx.js(&m), "transversal": ctx.js(&t) });
    guard(inputs, || {
        let k = parallel_class(&ctx.p, &m)?;
        let t = if k.contains(&t)? {
            loop {
                let t = random_line(rng, ctx.bound);
                if !k.contains(&t)? {
                    break t;
                }
            }
        } else {
            t
        };
        let mut lines: Vec<Subspace<F>> = Vec::new();
        while lines.len() < 3 {
            let x = k.member_through(&random_point_in(rng, &t, ctx.bound))?;
            if !lines.contains(&x) {
                lines.push(x);
            }
        }
        let r = regulus_through(&lines[0], &lines[1], &lines[2])?;
        let fail = |what: &str| {
            Outcome::fail(json!({
                "T": ctx.js(&t), "regulus": ctx.js(r.plane()), "violated": what
            }))
        };
        if r.plane().meet(ctx.p.plane())?.dim() != 2 {
            return Ok(fail("E ∩ C is a line"));
        }
        if r.polar().join(ctx.pp.plane())?.dim() != 4 {
            return Ok(fail("perp(E) + perp(C) is a solid"));
        }
        if !opposite_regulus_parallel_check(&ctx.p, &ctx.pp, &r, rng, ctx.bound, 3)? {
            return Ok(fail("opposite regulus parallel under C'"));
        }
        Ok(Outcome::pass())
    })
}

/// Checks that the pencil of lines through `pt` in `z` meets the complex
/// in one line or lies in it.
fn pencil_section_ok<F: Field>(
    w: &crate::kleingeom::LinearComplex<F>,
    pt: &Subspace<F>,
    z: &Subspace<F>,
    rng: &mut ChaCha8Rng,
    bound: u32,
) -> Result<bool> {
    match w.meet_pencil(pt, z)? {
        PencilSection::Single(l) => {
            Ok(l.contains(pt)? && z.contains(&l)? && w.contains_line(&l)?)
        }
        PencilSection::Whole => {
            let members = pencil(pt, z)?;
            for _ in 0..2 {
                let x = members.random_nonzero(rng, bound);
                if !w.contains_line(&pluecker_inverse_vector(&Bivector::from_vec(&x))?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn unique_complex<F: Field>(ctx: &Ctx<F>, rng: &mut ChaCha8Rng) -> Outcome {
    let m1 = random_line(rng, ctx.bound);
    let m2 = random_line(rng, ctx.bound);
    let inputs = json!({ "M1": ctx.js(&m1), "M2": ctx.js(&m2) });
    guard(inputs, || {
        let p = &ctx.p;
        let m2 = if c_parallel(p, &m1, &m2)? {
            loop {
                let m = random_line(rng, ctx.bound);
                if !c_parallel(p, &m1, &m)? {
                    break m;
                }
            }
        } else {
            m2
        };
        let w = hyperplane_for_classes(p, &m1, &m2)?;
        let fail =
            |what: &str| Outcome::fail(json!({ "W": ctx.js(w.hyperplane()), "violated": what }));
        let (k1, k2) = (parallel_class(p, &m1)?, parallel_class(p, &m2)?);
        if k1.solid().meet(k2.solid())? != *p.plane() {
            return Ok(fail("T1 ∩ T2 = C"));
        }
        if w.kind() != ComplexKind::General {
            return Ok(fail("complex is general"));
        }
        for k in [&k1, &k2] {
            for x in k.sample_members(rng, ctx.bound, 2) {
                if !w.contains_line(&x)? {
                    return Ok(fail("class members lie in the complex"));
                }
            }
        }
        for _ in 0..PENCILS_PER_TRIAL {
            let pt = ctx.point(rng);
            let z = random_extension(rng, &pt, 3, ctx.bound);
            if !pencil_section_ok(&w, &pt, &z, rng, ctx.bound)? {
                return Ok(Outcome::fail(json!({
                    "W": ctx.js(w.hyperplane()), "pencil_point": ctx.js(&pt),
                    "pencil_plane": ctx.js(&z), "violated": "pencil section",
                })));
            }
        }
        Ok(Outcome::pass())
    })
}

fn crossed_pencils<F: Field>(ctx: &Ctx<F>, i: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let pt = random_point(rng, ctx.bound);
    let q = loop {
        let q = ctx.point(rng);
        if q != pt {
            break q;
        }
    };
    // every fourth configuration is unconstrained, the rest satisfy the
    // pencil hypothesis
    let z = if i % 4 == 3 {
        random_extension(rng, &pt, 3, ctx.bound)
    } else {
        random_extension(rng, &pt.join(&q).expect("points of V"), 3, ctx.bound)
    };
    let through = |rng: &mut ChaCha8Rng| loop {
        let l = pt
            .join(&random_point_in(rng, &z, ctx.bound))
            .expect("points of V");
        if l.dim() == 2 {
            break l;
        }
    };
    let m1 = through(rng);
    let m2 = loop {
        let l = through(rng);
        if l != m1 {
            break l;
        }
    };
    let inputs = json!({
        "p": ctx.js(&pt), "q": ctx.js(&q), "M1": ctx.js(&m1), "M2": ctx.js(&m2),
    });
    guard(inputs, || {
        let p = &ctx.p;
        let n1 = parallel_through(p, &q, &m1)?;
        let n2 = parallel_through(p, &q, &m2)?;
        if !crossed_pencils_check(p, &m1, &m2, &n1, &n2)? {
            return Ok(Outcome::fail(json!({
                "N1": ctx.js(&n1), "N2": ctx.js(&n2), "violated": "crossed pencils"
            })));
        }
        let pq = pt.join(&q)?;
        if is_pencil(&[&m1, &m2, &pq])? {
            let polar = hyperplane_for_classes(p, &m1, &m2)?
                .null_polarity()?
                .image(&q)?;
            let ok = polar.contains(&n1)? && polar.contains(&n2)? && polar.contains(&pq)?;
            return Ok(Outcome::check(
                ok,
                || json!({ "N1": ctx.js(&n1), "N2": ctx.js(&n2), "violated": "null polarity" }),
            ));
        }
        Ok(Outcome::pass())
    })
}

fn translation_invariance<F: Field>(ctx: &Ctx<F>, rng: &mut ChaCha8Rng) -> Outcome {
    let c = AlgebraElement::random_nonzero(rng, ctx.bound);
    let inputs = json!({ "c": c.render(ctx.alg.field()) });
    guard(inputs, || {
        let ok = translation_invariance_check(&ctx.alg, &c, &ctx.p)?;
        Ok(Outcome::check(ok, || json!({ "violated": "invariance" }))
            .with_cert("translation invariance", "exact".into()))
    })
}

fn case_b_identity<F: Field>(ctx: &Ctx<F>, i: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let m = random_line(rng, ctx.bound);
    let c = AlgebraElement::random_nonzero(rng, ctx.bound);
    let constructed = i.is_multiple_of(2);
    let n = if constructed {
        ctx.alg.left_multiply_subspace(&c, &m)
    } else {
        Ok(random_line(rng, ctx.bound))
    };
    let inputs =
        json!({ "M": ctx.js(&m), "c": c.render(ctx.alg.field()), "constructed": constructed });
    guard(inputs, || {
        let n = n?;
        let left = left_parallel(&ctx.alg, &m, &n)?;
        let right = right_parallel(&ctx.alg, &m, &n)?;
        Ok(Outcome::check(
            left == right && (!constructed || left),
            || json!({ "N": ctx.js(&n), "left": left, "right": right }),
        ))
    })
}

fn random_form<F: Field>(rng: &mut ChaCha8Rng, bound: u32) -> [F; 4] {
    loop {
        let phi = [
            F::zero(),
            F::random_integral(rng, bound),
            F::random_integral(rng, bound),
            F::random_integral(rng, bound),
        ];
        if !phi.iter().all(F::is_zero) {
            return phi;
        }
    }
}

fn geometric_hyperplane<F: Field>(ctx: &Ctx<F>, i: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let forms: Vec<[F; 4]> = (0..3).map(|_| random_form(rng, ctx.bound)).collect();
    let pt = ctx.point(rng);
    let z = random_extension(rng, &pt, 3, ctx.bound);
    let field = ctx.alg.field();
    let inputs = json!({
        "phi": forms.iter().map(|f| f.iter().map(|x| x.render(field)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "pencil_point": ctx.js(&pt),
        "pencil_plane": ctx.js(&z),
    });
    guard(inputs, || {
        let c = ctx.p.plane();
        let ws = forms
            .iter()
            .map(|phi| hyperplane_from_form(&ctx.alg, phi))
            .collect::<Result<Vec<_>>>()?;
        let fail = |what: &str| Outcome::fail(json!({ "violated": what }));
        for w in &ws {
            if w.dim() != 5 || !w.contains(c)? {
                return Ok(fail("C ⊂ ker ψ"));
            }
        }
        let complex = complex_from_hyperplane(&ws[0])?;
        if !pencil_section_ok(&complex, &pt, &z, rng, ctx.bound)? {
            return Ok(fail("pencil section"));
        }
        let phis: Vec<Vec<F>> = forms.iter().map(|f| f.to_vec()).collect();
        if rank(4, &phis)? == 3 {
            let meet = ws[0].meet(&ws[1])?.meet(&ws[2])?;
            if meet != *c {
                return Ok(fail("three hyperplanes meet in C"));
            }
        }
        if i == 0 && ctx.alg.case() == AlgebraCase::A2 {
            let trace: [F; 4] = std::array::from_fn(|j| ctx.alg.trace(&AlgebraElement::basis(j)));
            let w = hyperplane_from_form(&ctx.alg, &trace)?;
            if w != c.join(&perp(c)?)? {
                return Ok(fail("trace form gives C + perp(C)"));
            }
        }
        Ok(Outcome::pass())
    })
}
