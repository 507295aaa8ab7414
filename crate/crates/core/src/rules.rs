//! Rewrite rules of `ℍ^{gl_n}` as expression text.
//!
//! Each rule states `lhs = rhs` for a word of two letters; every right-hand
//! side is written with `T`, `Tinv`, `Y`, `Yinv`, `e` and the shorthands of
//! [`crate::expr`]. Diagonal `e[x,x]` and `S[a,b]` are expanded by
//! [`diag_e`] and [`s_text`].

use std::fmt;

const QQ: &str = "{1/(q-q^-1)}";
const C_DOWN: &str = "{(tau^-1-tau)/(q-q^-1)}";
const C_UP: &str = "{(tau-tau^-1)/(q-q^-1)}";
const TT: &str = "{tau^-1-tau}";
const TD: &str = "{tau-tau^-1}";

/// A two-letter rewrite; indices are 1-based, `s` is `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `Y_i^s T_k`.
    YT { i: usize, s: i32, k: usize },
    /// `e_ab T_k`.
    ET { a: usize, b: usize, k: usize },
    /// `Y_i^s e_jk`.
    YE { i: usize, s: i32, j: usize, k: usize },
    /// `e_ij e_kl` with the second indices exchanged.
    SwapJ { i: usize, j: usize, k: usize, l: usize },
    /// `e_ij e_kl` with the first indices exchanged.
    SwapI { i: usize, j: usize, k: usize, l: usize },
    /// `e_ij e_kl` with the factors exchanged; needs `j != k`, `i != l`.
    Swap { i: usize, j: usize, k: usize, l: usize },
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lhs())
    }
}

fn y(i: usize, s: i32) -> String {
    if s > 0 {
        format!("Y[{i}]")
    } else {
        format!("Yinv[{i}]")
    }
}

/// `e_xx` in terms of `T` and `Y`.
pub fn diag_e(x: usize, n: usize) -> String {
    format!("{QQ} Tip[{x},{}] (Y[{n}] - Yinv[{n}]) Tm[{},{x}]", n - 1, n - 1)
}

/// `S_ab = [D_a, X_b]` in terms of `T` and `Y`.
pub fn s_text(a: usize, b: usize, n: usize) -> String {
    let m = n - 1;
    if a == b {
        let l = a;
        format!(
            "{QQ} Tim[{},1] ({{q}} Y[1] - {{q^-1}} Yinv[1]) Tp[1,{}] - {QQ} Tip[{l},{m}] (Y[{n}] - Yinv[{n}]) Tm[{m},{l}]",
            l - 1,
            l - 1
        )
    } else if a > b {
        let (j, i) = (a, b);
        format!("{C_DOWN} Tip[{i},{m}] Tim[{},1] ({{q}} Y[1] + Yinv[{n}]) Tm[{m},{j}] Tp[1,{}]", j - 2, i - 1)
    } else {
        let (i, j) = (a, b);
        format!("{C_DOWN} Tim[{},1] Tip[{j},{m}] ({{q^-1}} Yinv[1] + Y[{n}]) Tp[1,{}] Tm[{m},{i}]", i - 1, j - 2)
    }
}

fn c1(i: usize, j: usize, n: usize) -> String {
    let m = n - 1;
    if j > i {
        format!("{{q}} Tp[{i},{m}] Tim[{},{i}] (Y[{n}] - Yinv[{n}]) Tm[{m},{j}]", j - 2)
    } else {
        format!("Tp[{i},{m}] Tim[{},1] Tip[1,{}] Yinv[{m}] (Y[{n}]^2 - 1) Tm[{m},{j}] Tim[{m},{i}]", j - 1, n - 2)
    }
}

fn c2(i: usize, j: usize, n: usize) -> String {
    let m = n - 1;
    if j > i {
        format!("{{q^-1}} Tip[{j},{m}] (Y[{n}] - Yinv[{n}]) Tp[{i},{}] Tim[{m},{i}]", j - 2)
    } else {
        format!("Tp[{i},{m}] Tip[{j},{m}] Y[{m}] (1 - Y[{n}]^-2) Tm[{},1] Tp[1,{}] Tim[{m},{i}]", n - 2, j - 1)
    }
}

impl Rule {
    pub fn lhs(&self) -> String {
        match *self {
            Rule::YT { i, s, k } => format!("{} T[{k}]", y(i, s)),
            Rule::ET { a, b, k } => format!("e[{a},{b}] T[{k}]"),
            Rule::YE { i, s, j, k } => format!("{} e[{j},{k}]", y(i, s)),
            Rule::SwapJ { i, j, k, l } | Rule::SwapI { i, j, k, l } | Rule::Swap { i, j, k, l } => {
                format!("e[{i},{j}] e[{k},{l}]")
            }
        }
    }

    /// Right-hand side for rank `n`.
    pub fn rhs(&self, n: usize) -> String {
        let m = n - 1;
        match *self {
            Rule::YT { i, s, k } => {
                if i != k && i != k + 1 {
                    format!("T[{k}] {}", y(i, s))
                } else if s > 0 && i == k + 1 {
                    format!("T[{k}] Y[{k}] + {TT} Y[{k}]")
                } else if s > 0 {
                    format!("T[{k}] Y[{}] + {TD} Y[{k}]", k + 1)
                } else if i == k + 1 {
                    format!("T[{k}] Yinv[{k}] + {TD} Yinv[{}]", k + 1)
                } else {
                    format!("T[{k}] Yinv[{}] + {TT} Yinv[{}]", k + 1, k + 1)
                }
            }
            Rule::ET { a, b, k } => {
                let k1 = k + 1;
                let z = format!("{C_DOWN} Tip[{k1},{m}] (Y[{n}] - Yinv[{n}]) Tm[{m},{k}]");
                match (a, b) {
                    _ if a != k && a != k1 && b != k && b != k1 => format!("T[{k}] e[{a},{b}]"),
                    _ if a == k && b == k1 => format!("Tinv[{k}] (e[{k1},{k}] + {z})"),
                    _ if a == k1 && b == k => {
                        format!("T[{k}] e[{k},{k1}] + {TD} (e[{k1},{k}] + {z}) - ({z}) T[{k}]")
                    }
                    _ if a == k => format!("Tinv[{k}] e[{k1},{b}]"),
                    _ if a == k1 => format!("T[{k}] e[{k},{b}] + {TD} e[{k1},{b}]"),
                    _ if b == k1 => format!("Tinv[{k}] e[{a},{k}]"),
                    _ => format!("T[{k}] e[{a},{k1}] + {TD} e[{a},{k}]"),
                }
            }
            Rule::YE { i, s, j, k } => {
                let p = format!("Tm[{},1] Tp[1,{}]", i - 1, i - 1);
                let a = format!("Tim[{},1] Tip[1,{}]", i - 1, i - 1);
                let qinv = format!("Tp[{i},{m}] Tm[{m},{i}]");
                let qq = format!("Tip[{i},{m}] Tim[{m},{i}]");
                if s > 0 && j == i {
                    let rhs1 = format!("{{q}} {qinv} e[{i},{k}] + {C_UP} ({})", c1(i, k, n));
                    format!("({rhs1}) Y[{i}] {p}")
                } else if s > 0 && k == i {
                    let rhs2 = format!("{{q^-1}} e[{j},{i}] {qq} + {C_DOWN} ({})", c2(i, j, n));
                    let mut out = format!("({rhs2}) Y[{i}]");
                    for l in 1..i {
                        out.push_str(&format!(" + {TT} Tim[{},{l}] Tp[{},{}] Y[{l}] e[{j},{i}]", i - 1, l + 1, i - 1));
                    }
                    out
                } else if s > 0 {
                    let mut out = format!("Rip[{k},{i}] e[{j},{k}] Rim[{j},{i}] Y[{i}] Rp[{i},{k}]");
                    if i > j {
                        out.push_str(&format!(" + {TT} Tim[{},{j}] Tip[{},{}] Y[{j}] e[{j},{k}]", i - 1, j + 1, i - 1));
                    }
                    out
                } else if k == i {
                    format!(
                        "{{q}} {p} e[{j},{i}] Yinv[{i}] {qinv} - {{q}} {C_DOWN} Yinv[{i}] ({}) {qinv}",
                        c2(i, j, n)
                    )
                } else if j == i {
                    let mut out = format!(
                        "{{q^-1}} e[{i},{k}] {a} Yinv[{i}] - {{q^-1}} {C_UP} Yinv[{i}] ({})",
                        c1(i, k, n)
                    );
                    for l in 0..n - i {
                        out.push_str(&format!(
                            " + {TT} Tip[{i},{}] Tm[{},{i}] Yinv[{}] e[{i},{k}]",
                            n - l - 1,
                            n - l - 2,
                            n - l
                        ));
                    }
                    out
                } else {
                    let mut out = format!("Rp[{i},{j}] e[{j},{k}] Rm[{i},{k}] Yinv[{i}] Rip[{j},{i}]");
                    if k > i {
                        out.push_str(&format!(" + {TT} Tim[{},{}] Tip[{i},{}] Yinv[{k}] e[{j},{k}]", k - 1, i + 1, k - 1));
                    }
                    out
                }
            }
            Rule::SwapJ { i, j, k, l } => format!(
                "e[{i},{l}] e[{k},{j}] + e[{i},{l}] ({}) - e[{i},{j}] ({})",
                s_text(j, k, n),
                s_text(l, k, n)
            ),
            Rule::SwapI { i, j, k, l } => format!(
                "e[{k},{j}] e[{i},{l}] + ({}) e[{i},{l}] - ({}) e[{k},{l}]",
                s_text(j, k, n),
                s_text(j, i, n)
            ),
            Rule::Swap { i, j, k, l } => format!(
                "e[{k},{l}] e[{i},{j}] + e[{k},{l}] ({}) - e[{k},{j}] ({}) + ({}) e[{i},{l}] - ({}) e[{k},{l}]",
                s_text(j, i, n),
                s_text(l, i, n),
                s_text(j, k, n),
                s_text(j, i, n)
            ),
        }
    }

    /// Every instance of every rule at rank `n`.
    pub fn all(n: usize) -> Vec<Rule> {
        let sites = || 1..=n;
        let pairs = move || sites().flat_map(move |a| sites().filter(move |&b| b != a).map(move |b| (a, b)));
        let mut out = Vec::new();
        for k in 1..n {
            for i in sites() {
                for s in [1, -1] {
                    out.push(Rule::YT { i, s, k });
                }
            }
            for (a, b) in pairs() {
                out.push(Rule::ET { a, b, k });
            }
        }
        for i in sites() {
            for s in [1, -1] {
                for (j, k) in pairs() {
                    out.push(Rule::YE { i, s, j, k });
                }
            }
        }
        for (i, j) in pairs() {
            for (k, l) in pairs() {
                out.push(Rule::SwapJ { i, j, k, l });
                out.push(Rule::SwapI { i, j, k, l });
                if j != k && i != l {
                    out.push(Rule::Swap { i, j, k, l });
                }
            }
        }
        out
    }
}
