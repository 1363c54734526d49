use std::collections::BTreeSet;
use std::path::Path;

use bstar_core::bounds::{bound_table, CSV_HEADER};
use bstar_core::moments::{
    check_cauchy_schwarz_chain, check_log_convexity, check_ruzsa_58, check_ruzsa_sandwich,
    check_sk_sl_comparison, decomposition_identity, moment_profile, s_star_k_bipartite,
};
use bstar_core::search::{max_bstar_exact, max_bstar_greedy, max_sidon_exact, DEFAULT_BUDGET};
use bstar_core::setfamily::{check_al_is_l_system, check_def_bound, solution_family, SetFamily};
use bstar_core::structure::{
    find_good_split, good_exponent_set, lemma_decompose, split_expectation_exact,
    verify_decomposition, Decomposition, SplitMode,
};
use bstar_core::suite::run_suite;
use bstar_core::{
    is_b_k, is_b_star_k, CheckReport, Error, IntegerSet, Limits, Membership, SearchReport,
};
use num_bigint::BigUint;
use serde_json::json;

use crate::args::{parse_range, Command, Common, Format};

/// What a command produced, before it is written out.
pub struct Output {
    pub body: String,
    /// False when an asserted mathematical check failed.
    pub ok: bool,
}

/// Bad input, unreadable files or an exceeded budget.
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn read_set(path: &Path) -> Res<IntegerSet> {
    let (set, dropped) = IntegerSet::read(path, None)?;
    if dropped {
        eprintln!("note: duplicate values in {} were dropped", path.display());
    }
    Ok(set)
}

fn json_body(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn limits(common: &Common) -> Limits {
    match common.budget {
        Some(b) => Limits::default().with_max_tuples(b as u128),
        None => Limits::default(),
    }
}

fn all_passed<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> bool {
    reports.into_iter().all(CheckReport::passed)
}

/// A membership answer is consistent when its witness re-checks on its own.
fn membership_sound(m: &Membership, set: &IntegerSet, k: usize) -> bool {
    match &m.witness {
        Some(w) => !m.holds && w.k == k && w.is_valid() && w.lies_in(set),
        None => m.holds,
    }
}

pub fn run(command: Command, common: &Common) -> Res<Output> {
    let lim = limits(common);
    match command {
        Command::Verify { set, k } => {
            let a = read_set(&set)?;
            let bk = is_b_k(&a, k, &lim)?;
            let star = is_b_star_k(&a, k, &lim)?;
            let ok = membership_sound(&bk, &a, k)
                && membership_sound(&star, &a, k)
                && (!bk.holds || star.holds);
            let body = json!({
                "set": a,
                "k": k,
                "b_k": bk.holds,
                "b_star": star.holds,
                "b_k_witness": bk.witness,
                "b_star_witness": star.witness,
            });
            Ok(Output {
                body: json_body(&body),
                ok,
            })
        }
        Command::Moments { set, k, l, t } => {
            let a = read_set(&set)?;
            let profile = moment_profile(&a, k, &lim)?;
            let mut checks = vec![profile.check_invariants(), check_ruzsa_sandwich(&a, k)?];
            checks.push(check_cauchy_schwarz_chain(&a, k)?);
            checks.push(check_log_convexity(&a, k)?);
            if k >= 2 {
                checks.push(check_ruzsa_58(&a, k)?);
                checks.push(check_sk_sl_comparison(&a, k, l.unwrap_or(k - 1), &lim)?);
            }
            checks.push(decomposition_identity(&a, t.unwrap_or(k), &lim)?);
            let ok = all_passed(&checks);
            Ok(Output {
                body: json_body(&json!({ "profile": profile, "checks": checks })),
                ok,
            })
        }
        Command::Decompose {
            set,
            k,
            certificate,
            save,
        } => {
            let d: Decomposition = match certificate {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    serde_json::from_str(&text).map_err(|e| Failure(e.to_string()))?
                }
                None => {
                    let a = read_set(set.as_deref().expect("clap enforces --set"))?;
                    lemma_decompose(&a, k.expect("clap enforces --k"), &lim)?
                }
            };
            let report = verify_decomposition(&d, &lim)?;
            if let Some(path) = save {
                std::fs::write(&path, json_body(&d))
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            let ok = report.passed();
            Ok(Output {
                body: json_body(&json!({ "decomposition": d, "verification": report })),
                ok,
            })
        }
        Command::Split {
            set,
            k,
            seed,
            trials,
            exhaustive,
        } => {
            let a = read_set(&set)?;
            let mode = if exhaustive {
                SplitMode::Exhaustive
            } else {
                SplitMode::Auto
            };
            let expectation = if a.len() <= lim.split_cap {
                Some(split_expectation_exact(&a, k, &lim)?)
            } else {
                None
            };
            let split = find_good_split(&a, k, seed, trials, mode, &lim)?;
            // recount the witness split from scratch
            let recount = s_star_k_bipartite(&split.a_prime, &split.complement, k, &lim)?;
            let partition = split.a_prime.union(&split.complement) == a
                && split.a_prime.len() + split.complement.len() == a.len();
            let star = expectation.as_ref().map(|e| e.s_star_k.clone());
            let achieved = match &star {
                Some(s) => &recount * (BigUint::from(1u32) << (2 * k)) >= *s,
                None => split.achieved,
            };
            let mut ok =
                partition && recount == split.s_star_bipartite && achieved == split.achieved;
            ok &= expectation.as_ref().is_none_or(|e| e.identity_holds());
            ok &= split.achieved || !split.exhaustive;
            Ok(Output {
                body: json_body(&json!({ "expectation": expectation, "split": split })),
                ok,
            })
        }
        Command::Ekr {
            n,
            k,
            family,
            intersections,
        } => {
            let f = match family {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    SetFamily::from_json(&text)?
                }
                None => {
                    let (n, k) = (n.expect("clap enforces --n"), k.expect("clap enforces --k"));
                    if k > n || n > 64 {
                        return Err(Failure("need k <= n <= 64".into()));
                    }
                    lim_check_family(&lim, n, k)?;
                    SetFamily::all_subsets(n, k)
                }
            };
            let allowed: BTreeSet<usize> = match intersections {
                Some(v) => v.into_iter().collect(),
                None => (0..f.member_size()).collect(),
            };
            let report = check_def_bound(&f, &allowed)?;
            let ok = report.passed();
            Ok(Output {
                body: json_body(&report),
                ok,
            })
        }
        Command::Family { set, subset, l, k } => {
            let b = read_set(&set)?;
            let b_prime = read_set(&subset)?;
            let (_, bad) = good_exponent_set(&b, k, &lim)?;
            let family = solution_family(&b, &b_prime, l, &lim)?;
            let report = check_al_is_l_system(&b, &b_prime, l, &bad, k, &lim)?;
            let ok = report.passed();
            Ok(Output {
                body: json_body(
                    &json!({ "bad_exponents": bad, "family": family, "report": report }),
                ),
                ok,
            })
        }
        Command::Search {
            n,
            k,
            greedy,
            sidon,
        } => {
            let ns = parse_range(&n).map_err(Failure)?;
            if sidon && k != 2 {
                return Err(Failure("--sidon needs --k 2".into()));
            }
            let budget = common.budget.unwrap_or(DEFAULT_BUDGET);
            let mut reports = Vec::new();
            for &n in &ns {
                let r = if greedy {
                    max_bstar_greedy(n, k, &lim)?
                } else if sidon {
                    max_sidon_exact(n, budget, &lim)?
                } else {
                    max_bstar_exact(n, k, budget, &lim)?
                };
                reports.push(r);
            }
            let ok = reports.iter().all(search_sound);
            let format = common.format.unwrap_or(if ns.len() > 1 {
                Format::Csv
            } else {
                Format::Json
            });
            let body = match format {
                Format::Csv => {
                    let mut s = format!("{CSV_HEADER}\n");
                    for r in &reports {
                        s.push_str(&r.csv_row());
                        s.push('\n');
                    }
                    s
                }
                Format::Json if reports.len() == 1 => json_body(&reports[0]),
                Format::Json => json_body(&reports),
            };
            Ok(Output { body, ok })
        }
        Command::Bounds { n, k } => {
            let ns = parse_range(&n).map_err(Failure)?;
            let ks: Vec<usize> = parse_range(&k)
                .map_err(Failure)?
                .into_iter()
                .map(|v| v as usize)
                .collect();
            let table = bound_table(&ns, &ks, common.precision)?;
            let body = match common.format.unwrap_or(Format::Csv) {
                Format::Csv => table.to_csv(),
                Format::Json => json_body(&table),
            };
            Ok(Output { body, ok: true })
        }
        Command::Suite { seed, criteria } => {
            let report = run_suite(seed, &criteria, &lim)?;
            Ok(Output {
                body: json_body(&report),
                ok: report.passed,
            })
        }
    }
}

fn lim_check_family(lim: &Limits, n: usize, k: usize) -> Res<()> {
    let members = bstar_core::moments::binomial(n, k);
    let budget = BigUint::from(lim.max_tuples);
    // pairwise intersections are examined, so the square is what counts
    if &members * &members > budget {
        return Err(Failure(format!(
            "C({n},{k})^2 member pairs exceed the budget {budget}"
        )));
    }
    Ok(())
}

/// Witness inside `[N]`, of the reported size, and no asserted bound broken.
fn search_sound(r: &SearchReport) -> bool {
    let inside = r.witness.iter().all(|v| v >= 1 && v as u64 <= r.n);
    inside && r.witness.len() == r.best_size && r.check_bounds().passed()
}
