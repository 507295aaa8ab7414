//! Catalog of identities checked in the polynomial representation.
//!
//! Every entry builds, for a given `n`, a list of instances (one per index
//! assignment) whose two sides must agree as operators. Most sides are given
//! as expression text (see [`crate::expr`]).

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{CoreError, Result};
use crate::expr::parse_expr;
use crate::field::{Ctx, Mode};
use crate::gens::{CalDParams, Gen, Gens};
use crate::op::Op;

/// One side-by-side check.
pub enum Check {
    Text(String, String),
    Ops(Op, Op),
    /// `op` applied to the Laurent polynomial `input` must give `output`.
    Act { op: String, input: String, output: String },
}

pub struct Instance {
    pub label: String,
    pub check: Check,
}

type Builder = fn(&Gens) -> Result<Vec<Instance>>;

pub struct RelationEntry {
    pub id: &'static str,
    pub n_min: usize,
    pub ranges: &'static str,
    /// Whether the entry holds verbatim for the `τ^{n-1}`-rescaled `Y`.
    pub psi_ok: bool,
    /// Whether the entry needs `𝒟` parameters.
    pub uses_cald: bool,
    build: Builder,
}

impl RelationEntry {
    pub fn instances(&self, g: &Gens) -> Result<Vec<Instance>> {
        (self.build)(g)
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub assignment: String,
    pub difference: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub n: usize,
    pub mode: Mode,
    pub psi: bool,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "n": self.n,
            "mode": self.mode.to_string(),
            "psi": self.psi,
            "instances": self.instances,
            "verified": self.verified(),
            "failures": self.failures.iter().map(|f| json!({
                "assignment": f.assignment,
                "difference": f.difference,
            })).collect::<Vec<_>>(),
        })
    }
}

fn inst(label: String, l: String, r: impl Into<String>) -> Instance {
    Instance { label, check: Check::Text(l, r.into()) }
}

fn delta(a: usize, b: usize) -> i32 {
    (a == b) as i32
}

const QQ: &str = "{1/(q-q^-1)}";
const C_DOWN: &str = "{(tau^-1-tau)/(q-q^-1)}";
const C_UP: &str = "{(tau-tau^-1)/(q-q^-1)}";
const TT: &str = "{tau^-1-tau}";

/// Instance helpers iterate 1-based indices.
fn sites(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=n
}

fn hecke_idx(n: usize) -> std::ops::Range<usize> {
    1..n
}

// ----------------------------------------------------------------------
// DAHA relations.

fn daha_hecke(g: &Gens) -> Result<Vec<Instance>> {
    Ok(hecke_idx(g.n())
        .map(|k| inst(format!("k={k}"), format!("(T[{k}] - {{tau}}) (T[{k}] + {{tau^-1}})"), "0"))
        .collect())
}

fn daha_braid(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for l in 1..n.saturating_sub(1) {
        out.push(inst(
            format!("l={l}"),
            format!("T[{l}] T[{}] T[{l}]", l + 1),
            format!("T[{}] T[{l}] T[{}]", l + 1, l + 1),
        ));
    }
    for k in hecke_idx(n) {
        for l in k + 2..n {
            out.push(inst(format!("k={k},l={l}"), format!("T[{k}] T[{l}]"), format!("T[{l}] T[{k}]")));
        }
    }
    Ok(out)
}

fn daha_tx(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        out.push(inst(format!("k={k}"), format!("T[{k}] X[{k}] T[{k}]"), format!("X[{}]", k + 1)));
        for i in sites(n).filter(|&i| i != k && i != k + 1) {
            out.push(inst(format!("k={k},i={i}"), format!("T[{k}] X[{i}]"), format!("X[{i}] T[{k}]")));
        }
    }
    Ok(out)
}

fn daha_ty(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        out.push(inst(format!("k={k}"), format!("Tinv[{k}] Y[{k}] Tinv[{k}]"), format!("Y[{}]", k + 1)));
        for i in sites(n).filter(|&i| i != k && i != k + 1) {
            out.push(inst(format!("k={k},i={i}"), format!("T[{k}] Y[{i}]"), format!("Y[{i}] T[{k}]")));
        }
    }
    Ok(out)
}

fn daha_laurent(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        out.push(inst(format!("i={i}"), format!("Y[{i}] Yinv[{i}]"), "1"));
        out.push(inst(format!("i={i}"), format!("Yinv[{i}] Y[{i}]"), "1"));
        for j in i + 1..=n {
            out.push(inst(format!("i={i},j={j}"), format!("Y[{i}] Y[{j}]"), format!("Y[{j}] Y[{i}]")));
        }
    }
    for k in hecke_idx(n) {
        out.push(inst(format!("k={k}"), format!("T[{k}] Tinv[{k}]"), "1"));
        out.push(inst(format!("k={k}"), format!("Tinv[{k}] T[{k}]"), "1"));
    }
    out.push(inst("pi".into(), "pi piinv".into(), "1"));
    Ok(out)
}

fn daha_ytx(g: &Gens) -> Result<Vec<Instance>> {
    Ok(sites(g.n())
        .map(|i| inst(format!("i={i}"), format!("Yt X[{i}]"), format!("{{q}} X[{i}] Yt")))
        .collect())
}

fn daha_y2x1(_g: &Gens) -> Result<Vec<Instance>> {
    Ok(vec![inst(String::new(), "Yinv[2] X[1] Y[2] Xinv[1]".into(), "T[1]^2")])
}

// ----------------------------------------------------------------------
// U_q(gl_n) under the q-oscillator representation.

fn qg1(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        out.push(inst(format!("i={i}"), format!("g[{i}] ginv[{i}]"), "1"));
        out.push(inst(format!("i={i}"), format!("ginv[{i}] g[{i}]"), "1"));
        for j in i + 1..=n {
            out.push(inst(format!("i={i},j={j}"), format!("g[{i}] g[{j}]"), format!("g[{j}] g[{i}]")));
        }
    }
    Ok(out)
}

fn qg2(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for k in hecke_idx(n) {
            let e = delta(i, k) - delta(i, k + 1);
            out.push(inst(
                format!("i={i},k={k}"),
                format!("g[{i}] qe[{k}] ginv[{i}]"),
                format!("{{q^({e})}} qe[{k}]"),
            ));
            out.push(inst(
                format!("i={i},k={k}"),
                format!("g[{i}] qf[{k}] ginv[{i}]"),
                format!("{{q^({})}} qf[{k}]", -e),
            ));
        }
    }
    Ok(out)
}

fn qg3(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        for l in hecke_idx(n) {
            let rhs = if k == l {
                format!("{QQ} (g[{k}] ginv[{}] - ginv[{k}] g[{}])", k + 1, k + 1)
            } else {
                "0".into()
            };
            out.push(inst(format!("k={k},l={l}"), format!("qe[{k}] qf[{l}] - qf[{l}] qe[{k}]"), rhs));
        }
    }
    Ok(out)
}

fn qg4(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        for l in k + 2..n {
            for a in ["qe", "qf"] {
                out.push(inst(
                    format!("{a},k={k},l={l}"),
                    format!("{a}[{k}] {a}[{l}]"),
                    format!("{a}[{l}] {a}[{k}]"),
                ));
            }
        }
    }
    Ok(out)
}

fn serre(g: &Gens, a: &str) -> Vec<Instance> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        for l in hecke_idx(n).filter(|&l| l.abs_diff(k) == 1) {
            out.push(inst(
                format!("k={k},l={l}"),
                format!("{a}[{k}]^2 {a}[{l}] - {{q+q^-1}} {a}[{k}] {a}[{l}] {a}[{k}] + {a}[{l}] {a}[{k}]^2"),
                "0",
            ));
        }
    }
    out
}

fn qg5(g: &Gens) -> Result<Vec<Instance>> {
    Ok(serre(g, "qe"))
}

fn qg6(g: &Gens) -> Result<Vec<Instance>> {
    Ok(serre(g, "qf"))
}

fn sq(a: usize, b: usize) -> String {
    format!("(d[{a}] X[{b}] - X[{b}] d[{a}])")
}

fn qgl_d(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        out.push(inst(
            format!("(4) i={i}"),
            format!("d[{i}] X[{i}]"),
            format!("{QQ} ({{q}} t[{i}] - {{q^-1}} tinv[{i}])"),
        ));
        for j in sites(n) {
            let d = delta(i, j);
            let l = format!("i={i},j={j}");
            out.push(inst(format!("(1) {l}"), format!("t[{i}] X[{j}]"), format!("{{q^({d})}} X[{j}] t[{i}]")));
            out.push(inst(format!("(2) {l}"), format!("d[{i}] d[{j}]"), format!("d[{j}] d[{i}]")));
            out.push(inst(format!("(2) {l}"), format!("t[{i}] t[{j}]"), format!("t[{j}] t[{i}]")));
            out.push(inst(format!("(3) {l}"), format!("d[{i}] t[{j}]"), format!("{{q^({d})}} t[{j}] d[{i}]")));
            let (rm, rp) = if i == j { (format!("tinv[{i}]"), format!("t[{i}]")) } else { ("0".into(), "0".into()) };
            out.push(inst(format!("(4+) {l}"), format!("d[{i}] X[{j}] - {{q^({d})}} X[{j}] d[{i}]"), rm));
            out.push(inst(format!("(4-) {l}"), format!("d[{i}] X[{j}] - {{q^({})}} X[{j}] d[{i}]", -d), rp));
        }
    }
    Ok(out)
}

fn qgl_s(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n) {
            let rhs = if i == j { format!("{{1/(q+1)}} ({{q}} t[{i}] + tinv[{i}])") } else { "0".into() };
            out.push(inst(format!("i={i},j={j}"), sq(i, j), rhs));
        }
    }
    Ok(out)
}

fn qgl_e(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n) {
            for k in sites(n) {
                for l in sites(n) {
                    let lab = format!("i={i},j={j},k={k},l={l}");
                    out.push(inst(
                        lab.clone(),
                        format!("Eq[{i},{j}] Eq[{k},{l}] - Eq[{i},{l}] Eq[{k},{j}]"),
                        format!("Eq[{i},{l}] {} - Eq[{i},{j}] {}", sq(j, k), sq(l, k)),
                    ));
                    out.push(inst(
                        lab,
                        format!("Eq[{i},{j}] Eq[{k},{l}] - Eq[{k},{j}] Eq[{i},{l}]"),
                        format!("{} Eq[{i},{l}] - {} Eq[{k},{l}]", sq(j, k), sq(j, i)),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn qgl_et(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n) {
            for k in sites(n) {
                let e = delta(i, j) - delta(i, k);
                out.push(inst(
                    format!("i={i},j={j},k={k}"),
                    format!("t[{i}] Eq[{j},{k}] tinv[{i}]"),
                    format!("{{q^({e})}} Eq[{j},{k}]"),
                ));
            }
        }
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Hecke-algebra string identities.

const EPS: [(&str, &str, &str, &str); 2] = [("T", "Tp", "Tm", "1"), ("Tinv", "Tip", "Tim", "-1")];

fn braid_l(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        for j in 1..k {
            for i in 1..=j {
                for (t, _, _, e) in EPS {
                    let lab = format!("eps={e},i={i},j={j},k={k}");
                    out.push(inst(
                        lab.clone(),
                        format!("{t}[{}] Tp[{i},{k}]", j + 1),
                        format!("Tp[{i},{k}] {t}[{j}]"),
                    ));
                    out.push(inst(lab, format!("Tm[{k},{i}] {t}[{}]", j + 1), format!("{t}[{j}] Tm[{k},{i}]")));
                }
            }
        }
    }
    Ok(out)
}

fn braid_c(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let (a, b) = (n - 1, n - 2);
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            for (_, p, m, e) in EPS {
                let lab = |s: &str| format!("({s}) eps={e},i={i},j={j}");
                let j1 = j - 1;
                out.push(inst(lab("i"), format!("{p}[{j},{a}] Tp[{i},{a}]"), format!("Tp[{i},{a}] {p}[{j1},{b}]")));
                out.push(inst(lab("ii"), format!("{m}[{a},{j}] Tp[{i},{a}]"), format!("Tp[{i},{a}] {m}[{b},{j1}]")));
                out.push(inst(lab("iii"), format!("Tm[{a},{i}] {m}[{a},{j}]"), format!("{m}[{b},{j1}] Tm[{a},{i}]")));
                out.push(inst(lab("iv"), format!("Tm[{a},{i}] {p}[{j},{a}]"), format!("{p}[{j1},{b}] Tm[{a},{i}]")));
            }
        }
    }
    Ok(out)
}

fn hecke_r(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            // (eps, R names, T^{-eps} plus string, T^{eps} minus string)
            for (e, rp, rm, pl, mi) in [(1, "Rp", "Rm", "Tip", "Tm"), (-1, "Rip", "Rim", "Tp", "Tim")] {
                for (r, sq) in [(rp, "T"), (rm, "Tinv")] {
                    out.push(inst(
                        format!("eps={e},{r},j={j},i={i}"),
                        format!("{r}[{j},{i}]"),
                        format!("{pl}[{i},{}] {sq}[{}]^2 {mi}[{},{i}]", j - 2, j - 1, j - 2),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn r_inv(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n) {
            out.push(inst(format!("i={i},j={j}"), format!("Rm[{i},{j}] Rp[{i},{j}]"), "1"));
            out.push(inst(format!("i={i},j={j}"), format!("Rim[{i},{j}] Rip[{i},{j}]"), "1"));
            if i <= j && j < n {
                out.push(inst(format!("i={i},j={j}"), format!("Tp[{i},{j}] Tim[{j},{i}]"), "1"));
            }
        }
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Dunkl operators.

fn td(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        out.push(inst(format!("k={k}"), format!("Tinv[{k}] D[{k}] Tinv[{k}]"), format!("D[{}]", k + 1)));
        for i in sites(n).filter(|&i| i != k && i != k + 1) {
            out.push(inst(format!("k={k},i={i}"), format!("T[{k}] D[{i}]"), format!("D[{i}] T[{k}]")));
        }
    }
    Ok(out)
}

fn dprop1(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n).filter(|&j| j != i) {
            out.push(inst(
                format!("i={i},j={j}"),
                format!("Y[{i}] Rp[{i},{j}] X[{j}]"),
                format!("X[{j}] Rim[{j},{i}] Y[{i}]"),
            ));
        }
        let l = i;
        out.push(inst(
            format!("l={l}"),
            format!("Y[{l}] X[{l}]"),
            format!("{{q}} Tp[{l},{}] Tm[{},{l}] X[{l}] Y[{l}] Tm[{},1] Tp[1,{}]", n - 1, n - 1, l - 1, l - 1),
        ));
    }
    Ok(out)
}

fn dprop2(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in i + 1..=n {
            out.push(inst(format!("i={i},j={j}"), format!("D[{i}] D[{j}]"), format!("D[{j}] D[{i}]")));
        }
    }
    Ok(out)
}

fn dprop3(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n).filter(|&j| j != i) {
            out.push(inst(
                format!("i={i},j={j}"),
                format!("Y[{i}] D[{j}]"),
                format!("Rip[{j},{i}] D[{j}] Y[{i}] Rp[{i},{j}]"),
            ));
        }
        let l = i;
        out.push(inst(
            format!("l={l}"),
            format!("Y[{l}] Tm[{},1] Tp[1,{}] D[{l}]", l - 1, l - 1),
            format!("{{q^-1}} D[{l}] Tip[{l},{}] Tim[{},{l}] Y[{l}]", n - 1, n - 1),
        ));
    }
    Ok(out)
}

fn dprop4(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let a = n - 1;
    let mut out = Vec::new();
    for l in sites(n) {
        out.push(inst(
            format!("l={l}"),
            format!("X[{l}] D[{l}]"),
            format!("{QQ} Tip[{l},{a}] (Y[{n}] - Yinv[{n}]) Tm[{a},{l}]"),
        ));
        out.push(inst(
            format!("l={l}"),
            format!("D[{l}] X[{l}]"),
            format!("{QQ} Tim[{},1] ({{q}} Y[1] - {{q^-1}} Yinv[1]) Tp[1,{}]", l - 1, l - 1),
        ));
    }
    for j in sites(n) {
        for i in 1..j {
            out.push(inst(
                format!("j={j},i={i}"),
                format!("D[{j}] X[{i}] - X[{i}] D[{j}]"),
                format!("{C_DOWN} Tip[{i},{a}] Tim[{},1] ({{q}} Y[1] + Yinv[{n}]) Tm[{a},{j}] Tp[1,{}]", j - 2, i - 1),
            ));
            out.push(inst(
                format!("i={i},j={j}"),
                format!("D[{i}] X[{j}] - X[{j}] D[{i}]"),
                format!("{C_DOWN} Tim[{},1] Tip[{j},{a}] ({{q^-1}} Yinv[1] + Y[{n}]) Tp[1,{}] Tm[{a},{i}]", i - 1, j - 2),
            ));
        }
    }
    Ok(out)
}

fn e_rel(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n).filter(|&j| j != i) {
            for k in sites(n) {
                for l in sites(n).filter(|&l| l != k) {
                    let lab = format!("i={i},j={j},k={k},l={l}");
                    out.push(inst(
                        lab.clone(),
                        format!("e[{i},{j}] e[{k},{l}] - e[{i},{l}] e[{k},{j}]"),
                        format!("e[{i},{l}] S[{j},{k}] - e[{i},{j}] S[{l},{k}]"),
                    ));
                    out.push(inst(
                        lab,
                        format!("e[{i},{j}] e[{k},{l}] - e[{k},{j}] e[{i},{l}]"),
                        format!("S[{j},{k}] e[{i},{l}] - S[{j},{i}] e[{k},{l}]"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn te_move(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in hecke_idx(n) {
        let i1 = i + 1;
        out.push(inst(
            format!("i={i}"),
            format!("T[{i}] e[{i},{i1}] T[{i}]"),
            format!("e[{i1},{i}] + {C_DOWN} Tip[{i1},{}] (Y[{n}] - Yinv[{n}]) Tm[{},{i}]", n - 1, n - 1),
        ));
        for j in sites(n).filter(|&j| j != i && j != i1) {
            out.push(inst(format!("i={i},j={j}"), format!("T[{i}] e[{i},{j}] T[{i}]"), format!("e[{i1},{j}]")));
            out.push(inst(format!("i={i},j={j}"), format!("T[{i}] e[{j},{i1}] T[{i}]"), format!("e[{j},{i}]")));
            for k in sites(n).filter(|&k| k != j && k != i && k != i1) {
                out.push(inst(
                    format!("i={i},j={j},k={k}"),
                    format!("e[{j},{k}] T[{i}]"),
                    format!("T[{i}] e[{j},{k}]"),
                ));
            }
        }
    }
    Ok(out)
}

fn ye1(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n).filter(|&j| j != i) {
            let c1 = if j > i {
                format!("{{q}} Tp[{i},{}] Tim[{},{i}] (Y[{n}] - Yinv[{n}]) Tm[{},{j}]", n - 1, j - 2, n - 1)
            } else {
                format!(
                    "Tp[{i},{}] Tim[{},1] Tip[1,{}] Yinv[{}] (Y[{n}]^2 - 1) Tm[{},{j}] Tim[{},{i}]",
                    n - 1,
                    j - 1,
                    n - 2,
                    n - 1,
                    n - 1,
                    n - 1
                )
            };
            out.push(inst(
                format!("i={i},j={j}"),
                format!("Y[{i}] e[{i},{j}] Tim[{},1] Tip[1,{}] Yinv[{i}]", i - 1, i - 1),
                format!("{{q}} Tp[{i},{}] Tm[{},{i}] e[{i},{j}] + {C_UP} ({c1})", n - 1, n - 1),
            ));
        }
    }
    Ok(out)
}

fn ye2(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n).filter(|&j| j != i) {
            let c2 = if j > i {
                format!("{{q^-1}} Tip[{j},{}] (Y[{n}] - Yinv[{n}]) Tp[{i},{}] Tim[{},{i}]", n - 1, j - 2, n - 1)
            } else {
                format!(
                    "Tp[{i},{}] Tip[{j},{}] Y[{}] (1 - Y[{n}]^-2) Tm[{},1] Tp[1,{}] Tim[{},{i}]",
                    n - 1,
                    n - 1,
                    n - 1,
                    n - 2,
                    j - 1,
                    n - 1
                )
            };
            out.push(inst(
                format!("i={i},j={j}"),
                format!("Y[{i}] Tm[{},1] Tp[1,{}] e[{j},{i}] Yinv[{i}]", i - 1, i - 1),
                format!("{{q^-1}} e[{j},{i}] Tip[{i},{}] Tim[{},{i}] + {C_DOWN} ({c2})", n - 1, n - 1),
            ));
        }
    }
    Ok(out)
}

fn ye3(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in sites(n).filter(|&j| j != i) {
            for k in sites(n).filter(|&k| k != i && k != j) {
                out.push(inst(
                    format!("i={i},j={j},k={k}"),
                    format!("Y[{i}] Rp[{i},{j}] e[{j},{k}] Rm[{i},{k}] Yinv[{i}]"),
                    format!("Rip[{k},{i}] e[{j},{k}] Rim[{j},{i}]"),
                ));
            }
        }
    }
    Ok(out)
}

fn y_exp(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        let mut rhs = format!("Y[{i}] Tm[{},1] Tp[1,{}]", i - 1, i - 1);
        for k in 1..i {
            rhs.push_str(&format!(" + {TT} Tim[{},{k}] Tp[{},{}] Y[{k}]", i - 1, k + 1, i - 1));
        }
        out.push(inst(format!("(i) i={i}"), format!("Y[{i}]"), rhs));
        for j in 1..i {
            out.push(inst(
                format!("(ii) i={i},j={j}"),
                format!("Y[{i}]"),
                format!("Y[{i}] Rp[{i},{j}] + {TT} Tim[{},{j}] Tip[{},{}] Y[{j}]", i - 1, j + 1, i - 1),
            ));
        }
    }
    Ok(out)
}

fn yinv_exp(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        let mut rhs = format!("Yinv[{i}] Tp[{i},{}] Tm[{},{i}]", n - 1, n - 1);
        for k in 0..n - i {
            rhs.push_str(&format!(
                " + {TT} Tip[{i},{}] Tm[{},{i}] Yinv[{}]",
                n - k - 1,
                n - k - 2,
                n - k
            ));
        }
        out.push(inst(format!("(i) i={i}"), format!("Yinv[{i}]"), rhs));
        for k in i + 1..=n {
            out.push(inst(
                format!("(ii) k={k},i={i}"),
                format!("Yinv[{i}]"),
                format!("Yinv[{i}] Rip[{k},{i}] + {TT} Tim[{},{}] Tip[{i},{}] Yinv[{k}]", k - 1, i + 1, k - 1),
            ));
        }
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Generalized operators and the centre.

fn cald_comm(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for i in sites(n) {
        for j in i + 1..=n {
            out.push(inst(format!("i={i},j={j}"), format!("calD[{i}] calD[{j}]"), format!("calD[{j}] calD[{i}]")));
        }
    }
    Ok(out)
}

fn cald_t(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    for k in hecke_idx(n) {
        out.push(inst(format!("k={k}"), format!("Tinv[{k}] calD[{k}] Tinv[{k}]"), format!("calD[{}]", k + 1)));
        for i in sites(n).filter(|&i| i != k && i != k + 1) {
            out.push(inst(format!("k={k},i={i}"), format!("T[{k}] calD[{i}]"), format!("calD[{i}] T[{k}]")));
        }
    }
    Ok(out)
}

fn cald_pi(g: &Gens) -> Result<Vec<Instance>> {
    let p = g.cald_params().ok_or_else(|| CoreError::BadParams("no calD parameters".into()))?.clone();
    let mut out = Vec::new();
    for i in sites(g.n()) {
        out.push(Instance {
            label: format!("i={i}"),
            check: Check::Ops((*g.get(Gen::CalD(i))?).clone(), g.cald_pi_form(i, &p)?),
        });
    }
    Ok(out)
}

fn cald_d11(g: &Gens) -> Result<Vec<Instance>> {
    let ctx = g.ctx();
    let qq = ctx.sub(&ctx.q(), &ctx.inv(&ctx.q())?);
    let mut out = Vec::new();
    for i in sites(g.n()) {
        let d = ctx.scale_op(&qq, &*g.get(Gen::D(i))?);
        out.push(Instance {
            label: format!("i={i}"),
            check: Check::Ops(g.cald_pi_form(i, &CalDParams::dunkl())?, d),
        });
    }
    Ok(out)
}

/// Elementary symmetric functions of commuting operators, `e_0..=e_m`.
pub fn elementary_symmetric(ctx: &Ctx, ops: &[Op]) -> Result<Vec<Op>> {
    let n = ops.first().map_or(0, |o| o.n());
    let mut e = vec![Op::identity(n)];
    for op in ops {
        // e_r <- e_r + e_{r-1} op, descending so e_{r-1} is the old value.
        e.push(Op::zero(n));
        for r in (1..e.len()).rev() {
            let t = ctx.compose(&e[r - 1], op)?;
            e[r] = ctx.add_ops(&e[r], &t)?;
        }
    }
    Ok(e)
}

fn td_sym(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let ctx = g.ctx();
    let ds: Vec<Op> = sites(n).map(|i| Ok((*g.get(Gen::CalD(i))?).clone())).collect::<Result<_>>()?;
    let es = elementary_symmetric(ctx, &ds)?;
    let mut out = Vec::new();
    for (r, e) in es.iter().enumerate().skip(1) {
        for k in hecke_idx(n) {
            let t = g.get(Gen::T(k))?;
            out.push(Instance {
                label: format!("r={r},k={k}"),
                check: Check::Ops(ctx.compose(&t, e)?, ctx.compose(e, &t)?),
            });
        }
    }
    Ok(out)
}

fn center_yt(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut gens: Vec<String> = hecke_idx(n).map(|k| format!("T[{k}]")).collect();
    for i in sites(n) {
        gens.push(format!("Y[{i}]"));
        gens.push(format!("Yinv[{i}]"));
        for j in sites(n) {
            gens.push(format!("e[{i},{j}]"));
        }
    }
    Ok(gens.into_iter().map(|x| inst(x.clone(), format!("Yt {x}"), format!("{x} Yt"))).collect())
}

fn grade_yt(g: &Gens) -> Result<Vec<Instance>> {
    let n = g.n();
    let mut out = Vec::new();
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut a = Vec::with_capacity(n);
        for _ in 0..n {
            a.push((c % 4) as i32 - 1);
            c /= 4;
        }
        let mono: Vec<String> = a.iter().enumerate().map(|(i, e)| format!("X{}^({e})", i + 1)).collect();
        let mono = mono.join("*");
        let s: i32 = a.iter().sum();
        out.push(Instance {
            label: format!("a={a:?}"),
            check: Check::Act { op: "Yt".into(), input: mono.clone(), output: format!("q^({s})*{mono}") },
        });
    }
    Ok(out)
}

fn yt_pi(g: &Gens) -> Result<Vec<Instance>> {
    Ok(vec![inst(String::new(), "Yt".into(), format!("piinv^{}", g.n()))])
}

fn yd_q(g: &Gens) -> Result<Vec<Instance>> {
    Ok(sites(g.n()).map(|i| inst(format!("i={i}"), format!("Yt D[{i}]"), format!("{{q^-1}} D[{i}] Yt"))).collect())
}

macro_rules! entry {
    ($id:expr, $n:expr, $r:expr, $psi:expr, $cald:expr, $b:expr) => {
        RelationEntry { id: $id, n_min: $n, ranges: $r, psi_ok: $psi, uses_cald: $cald, build: $b }
    };
}

/// The full catalog in a stable order.
pub fn list_relations() -> Vec<RelationEntry> {
    vec![
        entry!("DAHA-HECKE", 2, "1<=k<=n-1", true, false, daha_hecke),
        entry!("DAHA-BRAID", 2, "1<=l<=n-2; |k-l|>1", true, false, daha_braid),
        entry!("DAHA-TX", 2, "1<=k<=n-1; i!=k,k+1", true, false, daha_tx),
        entry!("DAHA-TY", 2, "1<=k<=n-1; i!=k,k+1", true, false, daha_ty),
        entry!("DAHA-LAURENT", 1, "all i<j, k", true, false, daha_laurent),
        entry!("DAHA-YTX", 1, "1<=i<=n", true, false, daha_ytx),
        entry!("DAHA-Y2X1", 2, "none", true, false, daha_y2x1),
        entry!("QG-1", 1, "1<=i<j<=n", true, false, qg1),
        entry!("QG-2", 2, "1<=i<=n, 1<=k<=n-1", true, false, qg2),
        entry!("QG-3", 2, "1<=k,l<=n-1", true, false, qg3),
        entry!("QG-4", 2, "|k-l|>1", true, false, qg4),
        entry!("QG-5", 2, "|k-l|=1", true, false, qg5),
        entry!("QG-6", 2, "|k-l|=1", true, false, qg6),
        entry!("QGL-d", 1, "1<=i,j<=n", true, false, qgl_d),
        entry!("QGL-S", 1, "1<=i,j<=n", true, false, qgl_s),
        entry!("QGL-E", 1, "1<=i,j,k,l<=n", true, false, qgl_e),
        entry!("QGL-Et", 1, "1<=i,j,k<=n", true, false, qgl_et),
        entry!("BRAID-L", 3, "n-1>=k>j>=i>=1, eps=+-1", true, false, braid_l),
        entry!("BRAID-C", 2, "n>=j>i>=1, eps=+-1, (i)-(iv)", true, false, braid_c),
        entry!("HECKE-R", 2, "n>=j>i>=1, eps=+-1, sign=+-1", true, false, hecke_r),
        entry!("R-INV", 1, "1<=i,j<=n", true, false, r_inv),
        entry!("TD", 2, "1<=k<=n-1; i!=k,k+1", true, false, td),
        entry!("DPROP-1", 1, "i!=j; 1<=l<=n", true, false, dprop1),
        entry!("DPROP-2", 2, "1<=i<j<=n", true, false, dprop2),
        entry!("DPROP-3", 1, "i!=j; 1<=l<=n", true, false, dprop3),
        entry!("DPROP-4", 1, "1<=l<=n; 1<=i<j<=n", true, false, dprop4),
        entry!("E-REL", 2, "i!=j, k!=l", true, false, e_rel),
        entry!("TE-MOVE", 2, "1<=i<=n-1; j!=i,i+1; k!=j,i,i+1", true, false, te_move),
        entry!("YE-1", 2, "i!=j", true, false, ye1),
        entry!("YE-2", 2, "i!=j", true, false, ye2),
        entry!("YE-3", 3, "i,j,k distinct", true, false, ye3),
        entry!("Y-EXP", 1, "(i) 1<=i<=n; (ii) n>=i>j>=1", true, false, y_exp),
        entry!("YINV-EXP", 1, "(i) 1<=i<=n; (ii) n>=k>i>=1", true, false, yinv_exp),
        entry!("CALD-COMM", 2, "1<=i<j<=n", true, true, cald_comm),
        entry!("CALD-T", 2, "1<=k<=n-1; i!=k,k+1", true, true, cald_t),
        entry!("CALD-PI", 1, "1<=i<=n", false, true, cald_pi),
        entry!("CALD-D11", 1, "1<=i<=n", false, false, cald_d11),
        entry!("TD-SYM", 2, "1<=r<=n, 1<=k<=n-1", true, true, td_sym),
        entry!("CENTER-YT", 1, "T_k, Y_i^{+-1}, e_ij", true, false, center_yt),
        entry!("GRADE-YT", 1, "X^a, a in {-1..2}^n", false, false, grade_yt),
        entry!("YT-PI", 1, "none", false, false, yt_pi),
        entry!("YD-q", 1, "1<=i<=n", true, false, yd_q),
    ]
}

pub fn find_relation(id: &str) -> Result<RelationEntry> {
    list_relations()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CoreError::UnknownRelation(id.to_string()))
}

/// Default `𝒟` family used by the suite: `(l1, l2) = (1, 1)`, symbolic `a_j`.
pub const SUITE_CALD: (usize, usize) = (1, 1);

/// Generators at `n` with symbolic `𝒟^{(l1,l2)}` parameters.
pub fn suite_gens(n: usize, mode: Mode, psi: bool, cald: (usize, usize)) -> Result<Gens> {
    let names = CalDParams::names(cald.0, cald.1);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ctx = Ctx::daha(n, &refs, mode)?;
    let p = CalDParams::symbolic(&ctx, cald.0, cald.1)?;
    let g = if psi { Gens::psi(ctx) } else { Gens::new(ctx) };
    Ok(g.with_cald(p))
}

const MAX_DIFF_CHARS: usize = 2000;

fn check_instance(g: &Gens, c: &Check, memo: &mut Option<FxHashMap<String, Op>>) -> Result<Option<String>> {
    let ctx: &Arc<Ctx> = g.ctx();
    let diff = match c {
        Check::Text(l, r) => {
            let a = g.eval_memo(&parse_expr(l)?, memo)?;
            let b = g.eval_memo(&parse_expr(r)?, memo)?;
            ctx.sub_ops(&a, &b)?
        }
        Check::Ops(l, r) => ctx.sub_ops(l, r)?,
        Check::Act { op, input, output } => {
            let o = g.eval_str(op)?;
            let got = ctx.act(&o, &ctx.parse(input)?)?;
            let d = ctx.sub(&got, &ctx.parse(output)?);
            Op::mult(g.n(), d)
        }
    };
    if diff.is_zero() {
        return Ok(None);
    }
    let mut s = ctx.op_to_text(&diff);
    if s.len() > MAX_DIFF_CHARS {
        let mut cut = MAX_DIFF_CHARS;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str("...");
    }
    Ok(Some(s))
}

/// Runs one entry against prepared generators.
pub fn verify_with(entry: &RelationEntry, g: &Gens) -> Result<VerificationReport> {
    let n = g.n();
    if n < entry.n_min {
        return Err(CoreError::RankTooSmall { id: entry.id.to_string(), min: entry.n_min });
    }
    let insts = entry.instances(g)?;
    let mut failures = Vec::new();
    let mut memo = Some(FxHashMap::default());
    for i in &insts {
        if let Some(d) = check_instance(g, &i.check, &mut memo)? {
            failures.push(Failure { assignment: i.label.clone(), difference: d });
        }
    }
    Ok(VerificationReport {
        id: entry.id.to_string(),
        n,
        mode: g.ctx().mode(),
        psi: g.is_psi(),
        instances: insts.len(),
        failures,
    })
}

pub fn verify(id: &str, n: usize, mode: Mode) -> Result<VerificationReport> {
    verify_cald(id, n, mode, SUITE_CALD)
}

/// [`verify`] with an explicit `𝒟` family.
pub fn verify_cald(id: &str, n: usize, mode: Mode, cald: (usize, usize)) -> Result<VerificationReport> {
    let e = find_relation(id)?;
    verify_with(&e, &suite_gens(n, mode, false, cald)?)
}

/// Every entry applicable at `n`; with `psi`, only entries marked `psi_ok`.
pub fn verify_suite(n: usize, mode: Mode, psi: bool) -> Result<Vec<VerificationReport>> {
    let g = suite_gens(n, mode, psi, SUITE_CALD)?;
    let mut out = Vec::new();
    for e in list_relations() {
        if n < e.n_min || (psi && !e.psi_ok) {
            continue;
        }
        out.push(verify_with(&e, &g)?);
    }
    Ok(out)
}
