use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

use dahalab::{closed_m, list_relations, Ctx, Frac, Mode};
use dahalab_cli::{run, Format, ModeName, Outcome, RunConfig};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("dahalab").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(o.stdout.trim()).unwrap()
}

#[test]
fn verify_suite_at_rank_two() {
    let o = cli(&["verify", "--n", "2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<Value> = o.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), list_relations().len());
    for (l, e) in lines.iter().zip(list_relations()) {
        assert_eq!(l["id"], e.id);
        assert!(l["verified"] == true || l.get("skipped").is_some(), "{l}");
    }
}

#[test]
fn verify_single_id_and_text() {
    let o = cli(&["verify", "--id", "DAHA-HECKE", "--n", "3", "--mode", "spec", "--seed", "4", "--format", "text"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("DAHA-HECKE n=3 specialized(4): ok"), "{}", o.stdout);
    assert_eq!(cli(&["verify", "--id", "NOPE", "--n", "2"]).code, 2);
    assert_eq!(cli(&["verify", "--id", "BRAID-L", "--n", "2"]).code, 2);
}

#[test]
fn res_matches_closed_m() {
    let o = cli(&["res", "--n", "2", "--l1", "1", "--l2", "1", "--a", "-1,0,1", "--sym", "p1", "--format", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let c = Ctx::daha(2, &[], Mode::Exact).unwrap();
    let want = closed_m(&c, &Frac::int(1), &Frac::int(-1), &Frac::zero()).unwrap();
    assert_eq!(json(&o), c.op_to_json(&want));
    let h = cli(&["hamiltonian", "m-abc", "--n", "2", "--params", "a=1,b=-1,c=0"]);
    assert_eq!(h.stdout, o.stdout);
}

#[test]
fn symbolic_res_and_closed_forms() {
    let o = cli(&["res", "--n", "2", "--sym", "e2", "--a", "sym"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(json(&o)["terms"].as_array().is_some_and(|t| !t.is_empty()));
    let d = cli(&["hamiltonian", "d12", "--n", "2", "--format", "text"]);
    assert_eq!(d.code, 0);
    assert!(d.stdout.contains("a2"));
}

#[test]
fn two_type_commands() {
    let o = cli(&["identity", "two-type", "--n1", "2", "--n2", "1"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["holds"], true);
    let h = cli(&["hamiltonian", "twotype-m", "--n1", "1", "--n2", "1", "--params", "th0=2"]);
    assert_eq!(h.code, 0, "{}", h.stderr);
    assert_eq!(json(&h)["kind"], "M_tilde");
    assert_eq!(cli(&["hamiltonian", "twotype-h", "--n1", "1", "--n2", "1", "--params", "th0=2"]).code, 2);
    assert_eq!(cli(&["hamiltonian", "twotype-h", "--n1", "1", "--n2", "1", "--params", "t0=q"]).code, 2);
}

#[test]
fn pbw_reduce_output_is_sorted() {
    let o = cli(&["pbw", "reduce", "--n", "2", "--expr", "T[1] e[1,2] T[1] + Y[2] Y[1]^-1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let terms = json(&o)["terms"].as_array().unwrap().clone();
    let keys: Vec<(Value, Value, Value)> =
        terms.iter().map(|t| (t["w"].clone(), t["efactors"].clone(), t["yexp"].clone())).collect();
    let as_vec = |v: &Value| serde_json::from_value::<Vec<Value>>(v.clone()).unwrap().len();
    assert!(keys.iter().all(|k| as_vec(&k.0) == 2 && as_vec(&k.2) == 2));
    assert!(terms.iter().all(|t| t["coeff"].is_string()));
}

#[test]
fn pbw_step_bound_flag() {
    let o = cli(&["pbw", "reduce", "--n", "3", "--expr", "e[1,2] e[2,3] e[3,1] Y[1] e[2,1]", "--step-bound", "3"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("step bound"), "{}", o.stderr);
}

#[test]
fn commute_pair() {
    let o = cli(&["commute", "--n", "2", "--pair", "p1,p2", "--l1", "1", "--l2", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["commute"], true);
    assert_eq!(cli(&["commute", "--n", "2", "--pair", "p1"]).code, 2);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(cli(&["bogus"]).code, 2);
    assert_eq!(cli(&["verify"]).code, 2);
    assert_eq!(cli(&["verify", "--n", "0"]).code, 2);
    assert_eq!(cli(&["pbw", "reduce", "--n", "2", "--expr", "Y[1"]).code, 2);
    assert_eq!(cli(&["res", "--n", "2", "--sym", "z1"]).code, 2);
    assert_eq!(cli(&["res", "--n", "2", "--sym", "p1", "--a", "1,2"]).code, 2);
    assert_eq!(cli(&["verify", "--n", "2", "--mode", "fuzzy"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("dahalab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# defaults\nn = 2\nformat = text\nl1 = 1\nl2 = 1\na = -1,0,1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = cli(&["--config", p, "res", "--sym", "p1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let direct = cli(&["res", "--n", "2", "--a", "-1,0,1", "--sym", "p1", "--format", "text"]);
    assert_eq!(o.stdout, direct.stdout);
    let flag_wins = cli(&["--config", p, "res", "--sym", "p1", "--format", "json"]);
    assert!(flag_wins.stdout.starts_with('{'));
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(cli(&["--config", p, "verify"]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_parser() {
    let c = RunConfig::parse("n=3\nmode = spec\nseed=7\nstep_bound = 10\n").unwrap();
    assert_eq!(c.n, Some(3));
    assert_eq!(c.mode(), Mode::Specialized(7));
    assert_eq!(c.step_bound, Some(10));
    assert_eq!(RunConfig::parse("n = x").unwrap_err().line, 1);
    assert!(RunConfig::parse("n = 0").is_err());
}

#[test]
fn binary_output_is_byte_stable() {
    let bin = env!("CARGO_BIN_EXE_dahalab");
    let args = ["res", "--n", "3", "--sym", "p1", "--a", "sym"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(bin).args(["pbw", "reduce", "--n", "2", "--expr", "(("]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn binary_honours_step_bound_env() {
    let bin = env!("CARGO_BIN_EXE_dahalab");
    let o = Command::new(bin)
        .args(["pbw", "reduce", "--n", "3", "--expr", "e[1,2] e[2,3] e[3,1] Y[1] e[2,1]"])
        .env("DAHA_STEP_BOUND", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

fn render(c: &RunConfig) -> String {
    let mut out = String::from("# generated\n");
    if let Some(n) = c.n {
        out += &format!("n = {n}\n");
    }
    if let Some(m) = c.mode {
        out += if m == ModeName::Exact { "mode = exact\n" } else { "mode=specialized\n" };
    }
    if let Some(s) = c.seed {
        out += &format!("seed={s}\n");
    }
    if let Some(l) = c.l1 {
        out += &format!("l1 = {l}\n");
    }
    if let Some(l) = c.l2 {
        out += &format!("  l2 = {l}  \n");
    }
    if let Some(a) = &c.a {
        out += &format!("a = {a}\n\n");
    }
    if let Some(f) = c.format {
        out += if f == Format::Json { "format = json\n" } else { "format = text\n" };
    }
    if let Some(b) = c.step_bound {
        out += &format!("step_bound = {b}\n");
    }
    out
}

fn config() -> impl Strategy<Value = RunConfig> {
    (
        (prop::option::of(1usize..6), prop::option::of(prop::sample::select(vec![ModeName::Exact, ModeName::Specialized]))),
        (prop::option::of(any::<u64>()), prop::option::of(0usize..3), prop::option::of(0usize..3)),
        prop::option::of(prop::collection::vec(-3i64..=3, 1..4).prop_map(|v| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        })),
        prop::option::of(prop::sample::select(vec![Format::Json, Format::Text])),
        prop::option::of(1usize..1_000_000),
    )
        .prop_map(|((n, mode), (seed, l1, l2), a, format, step_bound)| RunConfig {
            n,
            mode,
            seed,
            l1,
            l2,
            a,
            format,
            step_bound,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_text_round_trips(c in config()) {
        prop_assert_eq!(RunConfig::parse(&render(&c)).unwrap(), c);
    }
}
