//! Acceptance suite: one labelled check per criterion, each printed as a
//! pass/fail line.  Run with `cargo test -p lefcalc --test acceptance`.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use lefcalc::alf::{Alf, VanishingCycle};
use lefcalc::assembler::{surgery_framings, run_pipeline, ClosedManifoldInput, PipelineStep};
use lefcalc::harer::{
    harer_alf, verify_against_input, BandTraversal, DoublePoint, LinkComponent, ProjectedLink,
};
use lefcalc::invariants::{adjust_rotations, chern_class, d3};
use lefcalc::matrix::{determinant, smith_normal_form, IntMat};
use lefcalc::{KirbyData, Sign, SignedTwist, Surface};

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            for j in 0..cols {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Small deterministic generator so the suite is reproducible.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    fn sign(&mut self) -> Sign {
        if self.below(2) == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_small_surface(rng: &mut Rng) -> Surface {
    // first homology rank at most six
    loop {
        let g = rng.below(4) as u32;
        let b = 1 + rng.below(4) as u32;
        let s = Surface::new(g, b);
        if s.h1_rank() <= 6 {
            return s;
        }
    }
}

fn random_alf(rng: &mut Rng, even_rotations: bool) -> Alf {
    let fiber = random_small_surface(rng);
    let count = rng.below(7) as usize;
    let cycles = (0..count)
        .map(|_| {
            let coeffs = (0..fiber.h1_rank()).map(|_| rng.range(-2, 2)).collect();
            let rotation = if even_rotations {
                2 * rng.range(-2, 2)
            } else {
                0
            };
            VanishingCycle::new(fiber.curve(coeffs).unwrap(), rng.sign(), rotation)
        })
        .collect();
    Alf::with_default_seifert(fiber, cycles).unwrap()
}

type Invariants = (i64, i64, lefcalc::AbelianGroup);

fn total_space_invariants(alf: &Alf) -> Invariants {
    let kd = alf.induced_kirby_data();
    (
        kd.euler_characteristic(),
        kd.signature(),
        kd.h1_total_space(),
    )
}

fn criterion_1() -> Result<String, String> {
    let trivial = Alf::trivial(Surface::disk()).unwrap();
    let got = d3(&trivial).map_err(|e| e.to_string())?;
    if got != rational(-1, 2) {
        return Err(format!("trivial disk fibration gave d3 = {got}"));
    }
    let fiber = Surface::annulus();
    let negative_hopf = Alf::with_default_seifert(
        fiber,
        vec![VanishingCycle::new(fiber.basis_class(0), Sign::Negative, 0)],
    )
    .unwrap();
    let got = d3(&negative_hopf).map_err(|e| e.to_string())?;
    if got != rational(1, 2) {
        return Err(format!("negative Hopf fibration gave d3 = {got}"));
    }
    if negative_hopf.negative_cycle_count() != 1 {
        return Err("negative cycle count of the Hopf band is not one".into());
    }
    Ok("d3(B^4 fibration) = -1/2 and d3(negative Hopf) = +1/2 exactly".into())
}

fn criterion_2() -> Result<String, String> {
    let mut rng = Rng(0x5eed01);
    let mut checked = 0;
    while checked < 200 {
        let alf = random_alf(&mut rng, checked % 2 == 1);
        if !chern_class(&alf).is_zero() {
            continue;
        }
        let base_d3 = d3(&alf).map_err(|e| format!("d3 failed on a c1=0 input: {e}"))?;
        let base_inv = total_space_invariants(&alf);
        for sign in [Sign::Positive, Sign::Negative] {
            let stabilized = alf.stabilize(sign);
            if !chern_class(&stabilized).is_zero() {
                return Err("stabilization moved the Chern class".into());
            }
            if total_space_invariants(&stabilized) != base_inv {
                return Err("stabilization changed the total space invariants".into());
            }
            let got = d3(&stabilized).map_err(|e| e.to_string())?;
            let want = match sign {
                Sign::Positive => base_d3.clone(),
                Sign::Negative => &base_d3 + BigRational::one(),
            };
            if got != want {
                return Err(format!(
                    "stabilization law failed: {base_d3} became {got}, wanted {want}"
                ));
            }
            if stabilized.boundary_open_book() != alf.boundary_open_book().stabilize(sign) {
                return Err("stabilization failed to commute with the boundary open book".into());
            }
        }
        checked += 1;
    }
    Ok(format!(
        "stabilization laws held exactly on {checked} randomized fibrations"
    ))
}

fn criterion_3() -> Result<String, String> {
    let mut rng = Rng(0x5eed02);
    let mut adjusted_count = 0;
    let mut nontrivial = 0;
    while adjusted_count < 60 {
        // even rotations guarantee the class is an even combination; skip
        // boundaries with huge torsion, whose minimal plans are legitimately
        // enormous and would blow the runtime budget
        let alf = random_alf(&mut rng, true);
        let group = alf.induced_kirby_data().h1_boundary().group().clone();
        if group.torsion.iter().any(|d| *d > BigInt::from(24)) {
            continue;
        }
        let (out, plan) = adjust_rotations(&alf)
            .map_err(|e| format!("adjustment failed on an even-rotation input: {e}"))?;
        if !chern_class(&out).is_zero() {
            return Err("adjustment left a nonzero Chern class".into());
        }
        for (i, before) in alf.rotations().iter().enumerate() {
            let after = out.cycles()[i].rotation();
            if (after - before) % 2 != 0 {
                return Err("adjustment made an odd rotation edit".into());
            }
        }
        if !plan.is_empty() {
            nontrivial += 1;
        }
        adjusted_count += 1;
    }

    // odd-order meridian images with odd weights: always adjustable, never
    // trivially so
    let fiber = Surface::new(1, 1);
    for copies in [3usize, 5, 7, 9] {
        let parallel = Alf::with_default_seifert(
            fiber,
            (0..copies)
                .map(|i| {
                    VanishingCycle::new(fiber.basis_class(0), Sign::Positive, i64::from(i == 0))
                })
                .collect(),
        )
        .unwrap();
        if chern_class(&parallel).is_zero() {
            return Err(format!("{copies} parallel copies lost their obstruction"));
        }
        let (out, plan) = adjust_rotations(&parallel).map_err(|e| e.to_string())?;
        if plan.is_empty() || !chern_class(&out).is_zero() {
            return Err(format!(
                "order-{copies} adjustment did not produce a working plan"
            ));
        }
        nontrivial += 1;
    }

    // order-two meridian image with an odd weight: obstructed
    let pair = Alf::with_default_seifert(
        fiber,
        (0..2)
            .map(|i| VanishingCycle::new(fiber.basis_class(0), Sign::Positive, i64::from(i == 0)))
            .collect(),
    )
    .unwrap();
    match adjust_rotations(&pair) {
        Err(lefcalc::Error::NotAnEvenCombination) => {}
        other => {
            return Err(format!(
                "odd-class counterexample was not rejected: {other:?}"
            ))
        }
    }
    Ok(format!(
        "rotation adjustment killed c1 on {adjusted_count} solvable inputs \
         ({nontrivial} with nonempty plans) and rejected the odd-class counterexample"
    ))
}

fn random_component(rng: &mut Rng, one_handles: usize) -> LinkComponent {
    let length = rng.below(3) as usize;
    let band_word = (0..length)
        .filter_map(|_| {
            if one_handles == 0 {
                None
            } else {
                Some(BandTraversal {
                    handle: rng.below(one_handles as u64) as usize,
                    sign: rng.sign(),
                })
            }
        })
        .collect();
    LinkComponent {
        band_word,
        target_framing: rng.range(-2, 2),
    }
}

fn criterion_4() -> Result<String, String> {
    let mut corpus: Vec<ProjectedLink> = Vec::new();
    for n1 in 0..4 {
        corpus.push(ProjectedLink::empty(n1));
    }
    for framing in -3..=3 {
        corpus.push(ProjectedLink {
            one_handles: 0,
            components: vec![LinkComponent {
                band_word: vec![],
                target_framing: framing,
            }],
            double_points: vec![],
            declared_bridge_number: Some(1),
        });
    }
    let mut rng = Rng(0x5eed04);
    for _ in 0..12 {
        let one_handles = rng.below(3) as usize;
        let components = vec![
            random_component(&mut rng, one_handles),
            random_component(&mut rng, one_handles),
        ];
        let double_points = (0..rng.below(4))
            .map(|_| {
                let first_comp = rng.below(2) as usize;
                let second_comp = rng.below(2) as usize;
                DoublePoint {
                    first: (
                        first_comp,
                        rng.below(components[first_comp].strand_count() as u64) as usize,
                    ),
                    second: (
                        second_comp,
                        rng.below(components[second_comp].strand_count() as u64) as usize,
                    ),
                }
            })
            .collect();
        corpus.push(ProjectedLink {
            one_handles,
            components,
            double_points,
            declared_bridge_number: None,
        });
    }
    if corpus.len() < 20 {
        return Err("corpus too small".into());
    }
    for (index, link) in corpus.iter().enumerate() {
        let (alf, _) = harer_alf(link).map_err(|e| format!("input {index}: {e}"))?;
        verify_against_input(link, &alf)
            .map_err(|e| format!("oracle mismatch on input {index}: {e}"))?;
        let kd = alf.induced_kirby_data();
        for (i, cycle) in alf.cycles().iter().enumerate() {
            let page = alf.seifert().framing(cycle.curve()).unwrap();
            let relative = kd.framing(i) - page;
            if relative != 1 && relative != -1 {
                return Err(format!(
                    "input {index}: cycle {i} has relative framing {relative}"
                ));
            }
        }
    }
    Ok(format!(
        "construction oracle (chi, sigma, H1) and the +-1 framing law held on {} inputs",
        corpus.len()
    ))
}

/// Invariant factors via greatest common divisors of all k x k minors: an
/// independent reference for the Smith normal form.
fn minor_gcd_factors(m: &IntMat) -> Vec<BigInt> {
    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k > n {
            return vec![];
        }
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(current.clone());
            // advance to the next combination in lexicographic order
            let mut i = k;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if current[i] != i + n - k {
                    break true;
                }
            };
            if !advanced {
                return out;
            }
            current[i] += 1;
            for j in i + 1..k {
                current[j] = current[j - 1] + 1;
            }
        }
    }

    let max = m.rows().min(m.cols());
    let mut gcds = vec![BigInt::one()]; // d_0 = 1
    for k in 1..=max {
        let mut g = BigInt::zero();
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                let minor = IntMat::from_fn(k, k, |i, j| m.at(rows[i], cols[j]).clone());
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        gcds.push(g);
    }
    (1..gcds.len()).map(|k| &gcds[k] / &gcds[k - 1]).collect()
}

fn criterion_5() -> Result<String, String> {
    let mut rng = Rng(0x5eed05);
    let mut large = 0;
    let mut referenced = 0;
    for case in 0..60 {
        let (rows, cols) = if case % 3 == 0 {
            (1 + rng.below(5) as usize, 1 + rng.below(5) as usize)
        } else {
            (1 + rng.below(8) as usize, 1 + rng.below(8) as usize)
        };
        let m = IntMat::from_fn(rows, cols, |_, _| BigInt::from(rng.range(-9, 9)));
        let snf = smith_normal_form(&m);
        if snf.u.mul(&m).mul(&snf.v) != snf.d {
            return Err("U M V differs from D".into());
        }
        if determinant(&snf.u).abs() != BigInt::one() || determinant(&snf.v).abs() != BigInt::one()
        {
            return Err("transforms are not unimodular".into());
        }
        let diag = snf.d.diagonal();
        for w in diag.windows(2) {
            let chain_ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            };
            if !chain_ok {
                return Err("divisibility chain broken".into());
            }
        }
        if rows.max(cols) <= 5 {
            let expected = minor_gcd_factors(&m);
            let got: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
            if got != expected {
                return Err(format!(
                    "invariant factors {got:?} disagree with the minor-gcd reference {expected:?}"
                ));
            }
            referenced += 1;
        } else {
            large += 1;
        }
    }
    Ok(format!(
        "Smith forms verified on 60 random matrices ({referenced} against the \
         minor-gcd reference, {large} larger, up to 8x8)"
    ))
}

fn criterion_6() -> Result<String, String> {
    let kirby = KirbyData::new(0, vec![], vec![], 0, 1).map_err(|e| e.to_string())?;
    let input =
        ClosedManifoldInput::new(kirby, ProjectedLink::empty(0)).map_err(|e| e.to_string())?;
    let (certificate, output, transcript) = run_pipeline(&input).map_err(|e| e.to_string())?;
    if certificate.negative_stabilizations.0 < 1 || certificate.negative_stabilizations.1 < 1 {
        return Err("a side is missing its mandatory negative stabilization".into());
    }
    if certificate.chern_zero != (true, true) {
        return Err("certificate lost a Chern-class check".into());
    }
    let (plain, twisted) = surgery_framings(&output);
    if plain.twisted == twisted.twisted {
        return Err("framing variants do not differ in the Z/2 bit".into());
    }
    if plain.section_self_intersection == twisted.section_self_intersection {
        return Err("framing variants have equal section records".into());
    }
    if output.euler_characteristic() != input.euler_characteristic() + 2 {
        return Err(format!(
            "surgery Euler characteristic is {} but the input has {}",
            output.euler_characteristic(),
            input.euler_characteristic()
        ));
    }
    if let Some(closed) = &output.closed_alf {
        if closed.euler_characteristic() != output.euler_characteristic() {
            return Err("the glued record disagrees with the piecewise count".into());
        }
    } else {
        return Err("the sphere input should reach syntactic agreement".into());
    }
    if !transcript
        .steps
        .iter()
        .any(|s| matches!(s, PipelineStep::D3Matched { .. }))
    {
        return Err("transcript is missing the matching step".into());
    }
    Ok(format!(
        "pipeline on the 4-sphere: d3 matched at {} with stabilizations {:?}, \
         variants differ in the framing bit, chi went 2 -> 4",
        certificate.d3_common, certificate.negative_stabilizations
    ))
}

fn criterion_7() -> Result<String, String> {
    let mut rng = Rng(0x5eed07);
    for _ in 0..500 {
        let fiber = loop {
            let g = rng.below(5) as u32;
            let b = 1 + rng.below(4) as u32;
            let s = Surface::new(g, b);
            if s.h1_rank() <= 8 {
                break s;
            }
        };
        let length = rng.below(11) as usize;
        let word: Vec<SignedTwist> = (0..length)
            .map(|_| {
                let coeffs = (0..fiber.h1_rank()).map(|_| rng.range(-2, 2)).collect();
                SignedTwist::new(fiber.curve(coeffs).unwrap(), rng.sign())
            })
            .collect();
        let book = lefcalc::OpenBook::new(fiber, word.clone()).unwrap();
        let m = book.abelianized_monodromy();
        let j = fiber.intersection_form();
        let n = fiber.h1_rank();
        let mt: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| m[k][i]).collect()).collect();
        if mat_mul(&mat_mul(&mt, &j), &m) != j {
            return Err("a monodromy failed to preserve the intersection form".into());
        }
        if let Some(twist) = word.first() {
            for i in 0..n {
                let e = fiber.basis_class(i);
                let round = twist.inverse().apply(&twist.apply(&e).unwrap()).unwrap();
                if round != e {
                    return Err("a twist and its inverse failed to cancel".into());
                }
            }
        }
    }
    Ok("M^T J M = J for 500 random monodromies; opposite twists cancel".into())
}

fn main() {
    let criteria: Vec<(&str, fn() -> Result<String, String>)> = vec![
        ("known d3 values", criterion_1),
        ("stabilization laws", criterion_2),
        ("rotation adjustment", criterion_3),
        ("construction oracle", criterion_4),
        ("Smith normal form oracle", criterion_5),
        ("pipeline on the 4-sphere", criterion_6),
        ("transvection/monodromy suite", criterion_7),
    ];

    let mut failures = 0;
    for (index, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS - {} - {}", index + 1, name, detail),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL - {} - {}", index + 1, name, why);
            }
        }
    }
    println!(
        "criterion 8: SKIP - stabilization-equivalence of the matched open books is \
         non-constructive and out of scope, as are the near-symplectic statements"
    );

    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
