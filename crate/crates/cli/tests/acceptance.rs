//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use l2betti::betti::{analyze, EulerCharacteristic};
use l2betti::complexes::{build_complex, verify_composites_zero};
use l2betti::foxcalc::{fox_derivative, make_idempotent, GroupRingElement};
use l2betti::lmod::{lmod_basis, lmod_verify, proof_identity_holds, TwoColumnFactorization};
use l2betti::presentations::{parse_presentation, ExponentStatus, Presentation, RootDeclaration};
use l2betti::rational::{int, q, Q};
use l2betti::vnoracle::{oracle_for_presentation, regular_representation, FiniteCyclicModel, RationalMatrix};
use l2betti::words::{Alphabet, Letter, VagueCardinal, Word};

type Verdict = Result<(), String>;
type Criterion = fn() -> Verdict;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Verdict {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_letters(r: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter { generator: r.gen_range(0..rank), inverse: r.gen_bool(0.5) }).collect()
}

fn random_word(r: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let len = r.gen_range(0..=max_len);
    Word::reduce(random_letters(r, rank, len))
}

fn pres(text: &str) -> Presentation {
    parse_presentation(text).unwrap_or_else(|e| panic!("{text:?}: {e:?}"))
}

fn betti_of(p: &Presentation) -> Result<(Q, Q, Q), String> {
    let r = analyze(p).map_err(|e| e.to_string())?;
    Ok((r.betti.b0, r.betti.b1, r.betti.b2))
}

fn chi_of(p: &Presentation) -> Result<Q, String> {
    match analyze(p).map_err(|e| e.to_string())?.chi {
        Some(EulerCharacteristic::Finite(c)) => Ok(c),
        other => Err(format!("no finite chi: {other:?}")),
    }
}

fn cyclic_text(m: u64) -> String {
    format!("gens x\nrel x^{m}\n")
}

// 1
fn one_relator_formulas() -> Verdict {
    let start = Instant::now();
    for m in 1..=6i64 {
        let p = pres(&format!("gens x y\nrel [x,y]^{m}\n"));
        let chi = chi_of(&p)?;
        ensure(chi == int(-1) + q(1, m), || format!("[x,y]^{m}: chi = {chi}"))?;
        let b = betti_of(&p)?;
        ensure(b == (Q::zero(), int(1) - q(1, m), Q::zero()), || format!("[x,y]^{m}: {b:?}"))?;
    }
    for d in 1..=5usize {
        let gens: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        let p = pres(&format!("gens {}\n", gens.join(" ")));
        let b = betti_of(&p)?;
        ensure(b == (Q::zero(), int(d as i64 - 1), Q::zero()), || format!("free rank {d}: {b:?}"))?;
    }
    for m in 1..=12i64 {
        let b = betti_of(&pres(&cyclic_text(m as u64)))?;
        ensure(b == (q(1, m), Q::zero(), Q::zero()), || format!("x^{m}: {b:?}"))?;
    }
    within(start, Duration::from_secs(1))
}

// 2
fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut inputs: Vec<String> = (1..=12).map(cyclic_text).collect();
    inputs.push("gens\n".to_owned());
    for text in &inputs {
        let p = pres(text);
        let (b0, b1, b2) = betti_of(&p)?;
        let report = oracle_for_presentation(&p).map_err(|e| format!("{text:?}: {e}"))?;
        let mut dims = report.vn_dims.clone();
        dims.resize(3, Q::zero());
        ensure(dims == vec![b0, b1, b2], || format!("{text:?}: oracle {dims:?}"))?;
        ensure(report.is_resolution(), || format!("{text:?}: not a resolution: {report:?}"))?;
        for (k, ker, im) in report.kernel_image_dims() {
            ensure(ker == im, || format!("{text:?}: degree {k} has ker {ker}, im {im}"))?;
        }
    }
    within(start, Duration::from_secs(5))
}

// 3
fn idempotent_rank() -> Verdict {
    let x = Word::generator(0);
    for m in 1..=12u64 {
        let e = make_idempotent(&x, m).map_err(|e| e.to_string())?;
        let model = FiniteCyclicModel::new(m, vec![1]).map_err(|e| e.to_string())?;
        let r = regular_representation(e.element(), &model);
        let n_tr = e.element().trace() * int(m as i64);
        ensure(n_tr.is_one(), || format!("m = {m}: N tr(e) = {n_tr}"))?;
        ensure(r.rank() == 1, || format!("m = {m}: rank {}", r.rank()))?;
        ensure(&r * &r == r, || format!("m = {m}: rho(e) is not idempotent"))?;
    }
    Ok(())
}

fn gen_el(i: usize) -> GroupRingElement {
    GroupRingElement::from_word(Word::generator(i))
}

fn word_el(letters: &[Letter]) -> GroupRingElement {
    GroupRingElement::from_word(Word::reduce(letters.iter().copied()))
}

// 4
fn fox_properties() -> Verdict {
    let mut r = rng(4);
    let one = GroupRingElement::one();
    for trial in 0..1200 {
        let rank = r.gen_range(1..=4);
        let w = random_word(&mut r, rank, 50);
        let lhs: GroupRingElement = (0..rank).map(|x| &fox_derivative(&w, x) * &(&gen_el(x) - &one)).sum();
        let rhs = &GroupRingElement::from_word(w.clone()) - &one;
        ensure(lhs == rhs, || format!("fundamental identity fails on trial {trial}: {w:?}"))?;
    }
    for trial in 0..300 {
        let rank = r.gen_range(1..=3);
        let qw = random_word(&mut r, rank, 10);
        let m = r.gen_range(1..=5u64);
        let mut power = Word::identity();
        let mut sum = GroupRingElement::zero();
        for _ in 0..m {
            sum = &sum + &GroupRingElement::from_word(power.clone());
            power = power.multiply(&qw);
        }
        for x in 0..rank {
            let direct = fox_derivative(&power, x);
            let factored = &sum * &fox_derivative(&qw, x);
            ensure(direct == factored, || format!("power rule fails on trial {trial}: q = {qw:?}, m = {m}"))?;
        }
    }
    for g in 2..=3usize {
        // the relator written out letter by letter
        let mut letters = Vec::new();
        for j in 0..g {
            let (a, b) = (2 * j, 2 * j + 1);
            letters.extend([Letter::pos(a), Letter::pos(b), Letter::neg(a), Letter::neg(b)]);
        }
        let relator = Word::reduce(letters.iter().copied());
        for j in 1..=g {
            let (a, b) = (2 * j - 2, 2 * j - 1);
            let k = word_el(&letters[..4 * (j - 1)]);
            let odd = &k * &(&one - &word_el(&[Letter::pos(a), Letter::pos(b), Letter::neg(a)]));
            let even = &(&k * &gen_el(a)) * &(&one - &word_el(&[Letter::pos(b), Letter::neg(a), Letter::neg(b)]));
            ensure(fox_derivative(&relator, a) == odd, || format!("g = {g}: a_(1,{}) differs", 2 * j - 1))?;
            ensure(fox_derivative(&relator, b) == even, || format!("g = {g}: a_(1,{}) differs", 2 * j))?;
        }
    }
    Ok(())
}

/// Largest `m` dividing the length with the word a block repeated `m` times,
/// trying every divisor.
fn brute_exponent(l: &[Letter]) -> u64 {
    let n = l.len();
    (1..=n)
        .filter(|m| n.is_multiple_of(*m))
        .filter(|m| {
            let p = n / m;
            (0..*m).all(|i| l[i * p..(i + 1) * p] == l[..p])
        })
        .max()
        .unwrap_or(1) as u64
}

// 5
fn exponent_extraction() -> Verdict {
    let mut r = rng(5);
    let mut checked = 0;
    while checked < 1500 {
        let rank = r.gen_range(1..=3);
        let base = random_word(&mut r, rank, 12).cyclic_reduce().1;
        if base.is_empty() {
            continue;
        }
        let reps = r.gen_range(1..=5);
        let letters: Vec<Letter> = (0..reps).flat_map(|_| base.letters().iter().copied()).collect();
        let w = Word::reduce(letters.iter().copied());
        let core = w.cyclic_reduce().1;
        ensure(core.letters() == letters.as_slice(), || "repeated cyclically reduced word was altered".to_owned())?;
        let want = brute_exponent(core.letters());
        ensure(core.exponent() == want, || format!("{core:?}: fast {} vs brute {want}", core.exponent()))?;
        ensure(w.exponent() == VagueCardinal::Finite(want), || format!("{w:?}: word exponent differs"))?;
        checked += 1;
    }
    for _ in 0..500 {
        let rank = r.gen_range(1..=3);
        let w = random_word(&mut r, rank, 14);
        if w.is_identity() {
            continue;
        }
        let (root, _) = w.root().map_err(|e| e.to_string())?;
        ensure(root.exponent() == VagueCardinal::Finite(1), || format!("root of {w:?} is a proper power"))?;
        for m in 1..=6u64 {
            let power = (0..m).fold(Word::identity(), |acc, _| acc.multiply(&root));
            let (back, k) = power.root().map_err(|e| e.to_string())?;
            ensure(k == m && back == root, || format!("root({root:?}^{m}) = ({back:?}, {k})"))?;
            let again = (0..k).fold(Word::identity(), |acc, _| acc.multiply(&back));
            ensure(again == power, || format!("{back:?}^{k} does not recompose"))?;
        }
    }
    Ok(())
}

fn surface(genus: usize, alpha: Word, decl: Option<RootDeclaration>) -> Presentation {
    let mut p = Presentation::new(Alphabet::surface(genus), vec![Word::surface_relator(genus), alpha]).unwrap();
    if let Some(d) = decl {
        p = p.with_root_declaration(d);
    }
    p
}

fn composites_vanish(p: &Presentation) -> Verdict {
    let spec = build_complex(p).map_err(|e| e.to_string())?;
    let v = verify_composites_zero(&spec);
    ensure(v.passed(), || format!("composite check failed: {:?}", v.failures().collect::<Vec<_>>()))
}

// 6
fn surface_suite() -> Verdict {
    let mut r = rng(6);
    let mut genus_one = 0;
    while genus_one < 200 {
        let alpha = random_word(&mut r, 2, 16);
        let sums = alpha.exponent_sums(2);
        if sums == [0, 0] {
            continue;
        }
        let p = surface(1, alpha.clone(), None);
        let report = analyze(&p).map_err(|e| format!("{alpha:?}: {e}"))?;
        ensure(
            (report.betti.b0.is_zero() && report.betti.b1.is_zero() && report.betti.b2.is_zero())
                && report.chi == Some(EulerCharacteristic::Finite(Q::zero()))
                && report.cd == Some(1),
            || format!("genus one, alpha {alpha:?}: {report:?}"),
        )?;
        composites_vanish(&p)?;
        genus_one += 1;
    }
    for g in 2..=4usize {
        let roots = [
            Word::generator(0),
            Word::generator(0).multiply(&Word::generator(2)),
            Word::generator(1).multiply(&Word::generator(4).inverse()),
        ];
        for beta in roots.iter().filter(|b| b.min_rank() <= 2 * g) {
            for m in 1..=3u64 {
                let p = surface(g, beta.pow(m as i64), Some(RootDeclaration { beta: beta.clone(), m }));
                let report = analyze(&p).map_err(|e| format!("g = {g}, m = {m}: {e}"))?;
                let chi = int(2 - 2 * g as i64) + q(1, m as i64);
                let status = report.m.as_ref().map(|e| e.status);
                ensure(
                    report.chi == Some(EulerCharacteristic::Finite(chi.clone()))
                        && report.betti.b0.is_zero()
                        && report.betti.b1 == -&chi
                        && report.betti.b2.is_zero()
                        && report.cd == Some(2)
                        && status == Some(ExponentStatus::DeclaredVerified)
                        && !report.conditional,
                    || format!("g = {g}, beta {beta:?}, m = {m}: {report:?}"),
                )?;
                composites_vanish(&p)?;
            }
        }
    }
    // undeclared extra relators still build complexes that compose to zero
    for g in 2..=3usize {
        let mut built = 0;
        while built < 30 {
            let alpha = random_word(&mut r, 2 * g, 12);
            if let Ok(spec) = build_complex(&surface(g, alpha.clone(), None)) {
                let v = verify_composites_zero(&spec);
                ensure(v.passed(), || format!("g = {g}, alpha {alpha:?}: composites do not vanish"))?;
                built += 1;
            }
        }
    }
    Ok(())
}

/// Left kernel of a 2 × n matrix by elimination on the columns.
fn left_kernel(b: &RationalMatrix) -> Vec<Vec<Q>> {
    let cols: Vec<[Q; 2]> = (0..b.cols()).map(|y| [b.get(0, y).clone(), b.get(1, y).clone()]).collect();
    match cols.iter().find(|c| !(c[0].is_zero() && c[1].is_zero())) {
        None => vec![vec![Q::one(), Q::zero()], vec![Q::zero(), Q::one()]],
        Some(c) => {
            // every v with v·c = 0 is a multiple of (c1, -c0); test the rest
            let v = vec![c[1].clone(), -c[0].clone()];
            if cols.iter().all(|d| (&v[0] * &d[0] + &v[1] * &d[1]).is_zero()) {
                vec![v]
            } else {
                Vec::new()
            }
        }
    }
}

fn random_q(r: &mut ChaCha8Rng) -> Q {
    q(r.gen_range(-9..=9), r.gen_range(1..=5))
}

fn random_nonzero_q(r: &mut ChaCha8Rng) -> Q {
    loop {
        let x = random_q(r);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_factorization(r: &mut ChaCha8Rng) -> TwoColumnFactorization {
    let (nx, ny) = (r.gen_range(1..=6), r.gen_range(1..=6));
    // B = u wᵀ has rank one; rows of A are multiples of u⊥
    let u = match r.gen_range(0..4) {
        0 => [Q::zero(), random_nonzero_q(r)],
        1 => [random_nonzero_q(r), Q::zero()],
        _ => [random_nonzero_q(r), random_nonzero_q(r)],
    };
    let mut w: Vec<Q> = (0..ny).map(|_| random_q(r)).collect();
    let pivot = r.gen_range(0..ny);
    w[pivot] = random_nonzero_q(r);
    let mut lambda: Vec<Q> = (0..nx).map(|_| random_q(r)).collect();
    let pivot = r.gen_range(0..nx);
    lambda[pivot] = random_nonzero_q(r);
    let perp = [u[1].clone(), -u[0].clone()];
    let a = RationalMatrix::from_rows(2, lambda.iter().map(|l| vec![l * &perp[0], l * &perp[1]]).collect());
    let b = RationalMatrix::from_rows(ny, u.iter().map(|ui| w.iter().map(|wy| ui * wy).collect()).collect());
    TwoColumnFactorization::new(a, b).expect("A B = 0 by construction")
}

// 7
fn lmod_suite() -> Verdict {
    let start = Instant::now();
    let mut r = rng(7);
    let mut swapped = 0;
    for trial in 0..1000 {
        let f = random_factorization(&mut r);
        let basis = lmod_basis(&f);
        ensure(lmod_verify(&f, &basis.v1, &basis.v2), || format!("trial {trial}: verification fails"))?;
        ensure(proof_identity_holds(&f, &basis.witness), || format!("trial {trial}: proof identity fails"))?;
        let w = basis.witness;
        if w.swapped {
            swapped += 1;
        } else {
            let (a1, a2) = (f.a().get(w.x0, 0), f.a().get(w.x0, 1));
            let (b1, b2) = (f.b().get(0, w.y0), f.b().get(1, w.y0));
            ensure(*a1 == -(a2 * b2 / b1), || format!("trial {trial}: identity fails in the given coordinates"))?;
        }
        let kernel = left_kernel(f.b());
        let v1 = &basis.v1;
        ensure(
            kernel.len() == 1 && (&kernel[0][0] * &v1[1] - &kernel[0][1] * &v1[0]).is_zero() && !v1.iter().all(Q::is_zero),
            || format!("trial {trial}: ker B is {kernel:?}, v1 = {v1:?}"),
        )?;
    }
    ensure(swapped > 0, || "no instance needed the coordinate swap".to_owned())?;
    within(start, Duration::from_secs(2))
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_l2betti")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().expect("the binary runs")
}

// 8
fn two_relator_path() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for n in 2..=6usize {
        let gens: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        let body = format!("gens {}\nrel y1 y2 y1^-1 y2^-2\nrel y2 y1 y2^-1 y1^-2\n", gens.join(" "));
        let variants = [
            ("flagged", "assume left-orderable\nassume cd>=3\n", true),
            ("bare", "", false),
            ("lo_only", "assume left-orderable\n", false),
            ("cd_only", "assume cd>=3\n", false),
        ];
        for (tag, flags, accepted) in variants {
            let path = dir.path().join(format!("{tag}_{n}.pres"));
            std::fs::write(&path, format!("{body}{flags}")).map_err(|e| e.to_string())?;
            let out = run(&["analyze", path.to_str().unwrap()]);
            let code = out.status.code();
            if accepted {
                ensure(code == Some(0), || format!("{tag} |X| = {n}: exit {code:?}"))?;
                let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
                let b = &doc["betti"];
                let want = (n - 2).to_string();
                ensure(
                    b["b0"] == "0" && b["b1"] == want.as_str() && b["b2"] == "0",
                    || format!("|X| = {n}: betti {b}"),
                )?;
            } else {
                ensure(code == Some(3), || format!("{tag} |X| = {n}: exit {code:?}, expected 3"))?;
            }
        }
    }
    Ok(())
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("corpus")
}

// 9
fn batch_determinism() -> Verdict {
    let dir = corpus();
    let dir = dir.to_str().unwrap();
    let runs = [
        run(&["batch", dir]),
        run(&["batch", dir]),
        run(&["batch", dir, "--jobs", "1"]),
        run(&["batch", dir, "--jobs", "8"]),
        run(&["batch", dir, "--jobs", "3"]),
    ];
    let first = &runs[0];
    ensure(!first.stdout.is_empty(), || "batch printed nothing".to_owned())?;
    for (i, o) in runs.iter().enumerate() {
        ensure(o.stdout == first.stdout && o.status.code() == first.status.code(), || {
            format!("run {i} differs from run 0")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("one-relator formula suite", one_relator_formulas),
        ("oracle equivalence on finite cases", oracle_equivalence),
        ("idempotent rank and trace", idempotent_rank),
        ("Fox calculus properties", fox_properties),
        ("exponent extraction", exponent_extraction),
        ("surface suite", surface_suite),
        ("lmod suite", lmod_suite),
        ("two-relator conditional path", two_relator_path),
        ("batch determinism", batch_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_owned()));
        match verdict {
            Ok(()) => println!("PASS {}: {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
