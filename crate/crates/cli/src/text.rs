//! Plain-text renderings for `--format text`.

use std::fmt::Write;

use l2betti::betti::{BettiReport, EulerCharacteristic, Tail, VerificationOutcome};
use l2betti::complexes::{ChainComplexSpec, Summand};
use l2betti::foxcalc::GroupRingElement;
use l2betti::lmod::LmodOutcome;
use l2betti::rational::{format_q, Q};
use l2betti::vnoracle::OracleReport;
use l2betti::words::{Alphabet, VagueCardinal};

use crate::commands::{BatchDocument, VerifyDocument};

fn qs(v: &[Q]) -> String {
    v.iter().map(format_q).collect::<Vec<_>>().join(", ")
}

fn outcome(o: &VerificationOutcome) -> String {
    let mut s = format!("{:?}", o.status).to_lowercase();
    if let Some(oracle) = &o.oracle {
        let _ = write!(s, " (formula {}; oracle {})", qs(&o.formula), qs(oracle));
    }
    if let Some(d) = &o.detail {
        let _ = write!(s, ": {d}");
    }
    s
}

pub fn report(r: &BettiReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "classification: {}", r.name.as_deref().unwrap_or(&r.classification));
    if let Some(d) = r.d {
        let _ = writeln!(s, "generators: {d}");
    }
    if let Some(g) = r.g {
        let _ = writeln!(s, "genus: {g}");
    }
    if let Some(m) = &r.m {
        let _ = writeln!(s, "m: {} ({})", m.value, serde_json::to_value(m.status).unwrap().as_str().unwrap_or(""));
    }
    match &r.chi {
        Some(EulerCharacteristic::Finite(c)) => {
            let _ = writeln!(s, "chi: {}", format_q(c));
        }
        Some(EulerCharacteristic::MinusInfinity) => {
            let _ = writeln!(s, "chi: -infinity");
        }
        None => {}
    }
    let order = match r.order {
        VagueCardinal::Finite(n) => format!("finite, {n}"),
        VagueCardinal::Infinite => "infinite".to_owned(),
    };
    let _ = writeln!(s, "order: {order}");
    let tail = match r.betti.tail {
        Tail::ZeroFromTwo => "b_n = 0 for n >= 2",
        Tail::UndeterminedFromThree => "b_n undetermined for n >= 3",
    };
    let _ = writeln!(
        s,
        "b0 = {}, b1 = {}, b2 = {}; {tail}",
        format_q(&r.betti.b0),
        format_q(&r.betti.b1),
        format_q(&r.betti.b2)
    );
    if let Some(cd) = r.cd {
        let _ = writeln!(s, "cd_Q: {cd}");
    }
    if !r.assumptions.is_empty() {
        let _ = writeln!(s, "assumptions: {}", r.assumptions.join(", "));
    }
    if r.conditional {
        let _ = writeln!(s, "conditional: yes");
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(s, "oracle: {}", outcome(v));
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    if let Some(src) = &r.source {
        let _ = writeln!(s, "source: {src}");
    }
    s
}

pub fn verification(doc: &VerifyDocument) -> String {
    let mut s = String::new();
    for c in &doc.symbolic.checks {
        let _ = writeln!(s, "[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
        if let Some(d) = &c.detail {
            let _ = writeln!(s, "       {d}");
        }
    }
    let _ = writeln!(s, "oracle: {}", outcome(&doc.oracle));
    let _ = writeln!(s, "{}", if doc.passed { "all checks passed" } else { "verification failed" });
    s
}

fn element(a: &Alphabet, e: &GroupRingElement) -> String {
    if e.is_zero() {
        return "0".to_owned();
    }
    e.terms()
        .map(|(w, c)| match format_q(c).as_str() {
            "1" => a.format_word(w),
            "-1" => format!("-{}", a.format_word(w)),
            c => format!("{c}*{}", a.format_word(w)),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn complex(spec: &ChainComplexSpec) -> String {
    let mut s = String::new();
    let a = &spec.alphabet;
    for k in (0..=spec.top_degree()).rev() {
        let parts: Vec<String> = spec
            .module(k)
            .summands
            .iter()
            .map(|m| match m {
                Summand::Free => "QG".to_owned(),
                Summand::Twisted(e) => format!("QGe[{}, {}]", a.format_word(e.root()), e.order()),
            })
            .collect();
        let _ = writeln!(s, "C{k} = {}", if parts.is_empty() { "0".to_owned() } else { parts.join(" + ") });
    }
    for k in (1..=spec.top_degree()).rev() {
        let b = spec.boundary(k);
        let _ = writeln!(s, "d{k} ({}x{}):", b.rows(), b.cols());
        for i in 0..b.rows() {
            let row: Vec<String> = b.row(i).iter().map(|e| element(a, e)).collect();
            let _ = writeln!(s, "  [{}]", row.join(" | "));
        }
    }
    s
}

pub fn oracle(r: &OracleReport) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
    format!(
        "N = {}\nblock dims: {}\nranks: {}\nhomology dims: {}\nvon Neumann dims: {}\n",
        r.n,
        join(&r.block_dims),
        join(&r.ranks),
        join(&r.homology_dims),
        qs(&r.vn_dims)
    )
}

pub fn lmod(o: &LmodOutcome) -> String {
    format!(
        "v1 = ({})\nv2 = ({})\nx0 = {}, y0 = {}, swapped = {}\nverified: {}\nproof identity: {}\n",
        qs(&o.basis.v1),
        qs(&o.basis.v2),
        o.basis.witness.x0,
        o.basis.witness.y0,
        o.basis.witness.swapped,
        o.verified,
        o.proof_identity
    )
}

pub fn batch(doc: &BatchDocument) -> String {
    let mut s = String::new();
    for e in &doc.files {
        match (&e.report, &e.error) {
            (Some(r), _) => {
                let _ = writeln!(
                    s,
                    "{}: {} b0 = {}, b1 = {}, b2 = {}",
                    e.file,
                    r.classification,
                    format_q(&r.betti.b0),
                    format_q(&r.betti.b1),
                    format_q(&r.betti.b2)
                );
            }
            (None, Some(f)) => {
                let _ = writeln!(s, "{}: error: {}", e.file, f.message);
            }
            (None, None) => {}
        }
    }
    s
}
