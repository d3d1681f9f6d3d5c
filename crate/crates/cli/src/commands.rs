use std::fmt;
use std::process::ExitCode;

use nestword::automata::enumerate::{fsa_language, nvpa_language, pda_language, vpa_language};
use nestword::automata::{Automaton, AutomatonError, Fsa, Nvpa, Vpa, DEFAULT_MAX_CONFIGS};
use nestword::closures::{self, PrefixClosure};
use nestword::groups::{self, GroupError, GroupSpec, RhoContract};
use nestword::nested::{Tag, TaggedWord, Word};

pub const MAX_ENUM_LEN: usize = 8;
const MAX_CONFIGS_VAR: &str = "NESTWORD_MAX_CONFIGS";

#[derive(Debug)]
pub enum CliError {
    /// Bad input: flags, specs, automata or words that do not parse.
    Usage(String),
    Io(String),
    /// A run that could not be completed.
    Run(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Io(_) | CliError::Run(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Run(m) => f.write_str(m),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn write(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn load_automaton(path: &str) -> Result<Automaton> {
    Automaton::from_json(&read(path)?).map_err(|e| usage(format!("{path}: {e}")))
}

fn load_group(path: &str) -> Result<GroupSpec> {
    GroupSpec::from_json(&read(path)?).map_err(|e| usage(format!("{path}: {e}")))
}

fn max_configs() -> Result<usize> {
    match std::env::var(MAX_CONFIGS_VAR) {
        Ok(v) => match v.trim().parse() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(usage(format!("{MAX_CONFIGS_VAR} must be a positive integer"))),
        },
        Err(_) => Ok(DEFAULT_MAX_CONFIGS),
    }
}

fn run_error(e: AutomatonError) -> CliError {
    match e {
        AutomatonError::EpsilonBudgetExceeded(_) | AutomatonError::ConfigurationSetOverflow(_) => {
            CliError::Run(e.to_string())
        }
        _ => usage(e),
    }
}

fn verdict(accepted: bool, yes: &str, no: &str) -> ExitCode {
    if accepted {
        println!("{yes}");
        ExitCode::SUCCESS
    } else {
        println!("{no}");
        ExitCode::from(1)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn build(group: &str, out: &str) -> Result<ExitCode> {
    let spec = load_group(group)?;
    let r = groups::build(&spec).map_err(usage)?;
    write(out, &r.automaton.to_json())?;
    let rho = match r.rho_contract {
        RhoContract::Bijection => "bijection",
        RhoContract::Surjection => "surjection",
    };
    println!("wrote {out}");
    println!("kind: {}", r.automaton.kind());
    println!("rho: {rho}");
    println!("states: {}", r.automaton.num_states());
    if let Automaton::Vpa(m) = &r.automaton {
        println!("stack symbols: {} (plus bottom {})", m.num_stack_symbols() - 1, m.stack_name(m.bottom()));
    }
    Ok(ExitCode::SUCCESS)
}

/// A non-empty word with no call or return tokens, shown to a machine that
/// has calls on one of its letters, was almost certainly meant to be tagged.
fn reject_plain_input(tw: &TaggedWord, has_call: impl Fn(nestword::nested::Letter) -> bool) -> Result<()> {
    let plain = !tw.is_empty() && tw.symbols().iter().all(|s| s.tag == Tag::Internal);
    if plain && tw.symbols().iter().any(|s| has_call(s.letter)) {
        return Err(usage(
            "this word has no call or return tokens but the automaton reads calls; \
             tag it (`<a` call, `a>` return) or run `nestword annotate` first",
        ));
    }
    Ok(())
}

fn print_vpa_trace(m: &Vpa, tw: &TaggedWord) -> Result<bool> {
    let run = m.run(tw).map_err(usage)?;
    let tokens = tw.tokens();
    for c in &run.trace {
        let stack: Vec<&str> = c.stack.iter().map(|&g| m.stack_name(g)).collect();
        let next = tokens.get(c.position).map(String::as_str).unwrap_or("");
        let line = format!("{:>3}  {:<12} [{}]  {next}", c.position, m.state_name(c.state), stack.join(" "));
        println!("{}", line.trim_end());
    }
    if let Some(p) = run.halted_at {
        println!("no transition on {} at position {}", tokens[p], p + 1);
    }
    Ok(run.accepted)
}

fn check_fsa(m: &Fsa, text: &str, trace: bool, prefix: bool) -> Result<bool> {
    let tw = TaggedWord::parse(m.alphabet(), text).map_err(usage)?;
    if tw.symbols().iter().any(|s| s.tag != Tag::Internal) {
        return Err(usage("finite automata read untagged words"));
    }
    let w = tw.forget();
    let m = if prefix { closures::reg_prefix(m) } else { m.clone() };
    if trace {
        let mut q = Some(m.initial());
        println!("  0  {}", m.state_names()[m.initial()]);
        for (i, &a) in w.letters().iter().enumerate() {
            q = q.and_then(|q| m.next(q, a));
            match q {
                Some(q) => println!("{:>3}  {}", i + 1, m.state_names()[q]),
                None => {
                    println!("no transition on {} at position {}", m.alphabet().name(a), i + 1);
                    break;
                }
            }
        }
    }
    m.accepts(&w).map_err(usage)
}

pub fn check(path: &str, text: &str, trace: bool, prefix: bool) -> Result<ExitCode> {
    let accepted = match load_automaton(path)? {
        Automaton::Fsa(m) => check_fsa(&m, text, trace, prefix)?,
        Automaton::Pda(m) => {
            if prefix || trace {
                return Err(usage("--prefix and --trace are not available for pushdown automata"));
            }
            let w = Word::parse(m.alphabet(), text).map_err(usage)?;
            m.run(&w, None).map_err(run_error)?
        }
        Automaton::Vpa(m) => {
            let tw = TaggedWord::parse(m.alphabet(), text).map_err(usage)?;
            reject_plain_input(&tw, |a| (0..m.num_states()).any(|q| m.call(q, a).is_some()))?;
            if prefix {
                PrefixClosure::new(&m).contains(&tw).map_err(usage)?
            } else if trace {
                print_vpa_trace(&m, &tw)?
            } else {
                m.accepts(&tw).map_err(usage)?
            }
        }
        Automaton::Nvpa(m) => {
            if prefix || trace {
                return Err(usage("--prefix and --trace need a deterministic automaton"));
            }
            let tw = TaggedWord::parse(m.alphabet(), text).map_err(usage)?;
            reject_plain_input(&tw, |a| (0..m.num_states()).any(|q| !m.calls(q, a).is_empty()))?;
            m.accepts_with_cap(&tw, max_configs()?).map_err(run_error)?
        }
    };
    Ok(verdict(accepted, "accept", "reject"))
}

pub fn annotate(group: &str, text: &str) -> Result<ExitCode> {
    let spec = load_group(group)?;
    let w = Word::parse(spec.alphabet(), text).map_err(usage)?;
    match groups::annotate(&spec, &w) {
        Ok(tw) => {
            println!("{tw}");
            Ok(ExitCode::SUCCESS)
        }
        Err(GroupError::NotIdentity) => Ok(verdict(false, "", "not identity")),
        Err(e) => Err(usage(e)),
    }
}

pub fn enumerate(path: &str, max_len: usize) -> Result<ExitCode> {
    if max_len > MAX_ENUM_LEN {
        return Err(usage(format!("--max-len is capped at {MAX_ENUM_LEN}")));
    }
    let lines: Vec<String> = match load_automaton(path)? {
        Automaton::Fsa(m) => fsa_language(&m, max_len).iter().map(Word::to_string).collect(),
        Automaton::Pda(m) => pda_language(&m, max_len).map_err(run_error)?.iter().map(Word::to_string).collect(),
        Automaton::Vpa(m) => vpa_language(&m, max_len).iter().map(TaggedWord::to_string).collect(),
        Automaton::Nvpa(m) => nvpa_language(&m, max_len, max_configs()?)
            .map_err(run_error)?
            .iter()
            .map(TaggedWord::to_string)
            .collect(),
    };
    for line in lines {
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn as_vpa(a: &Automaton) -> Result<Vpa> {
    match a {
        Automaton::Vpa(m) => Ok(m.clone()),
        Automaton::Fsa(m) => Ok(m.to_internal_vpa()),
        Automaton::Nvpa(m) => Vpa::try_from(m).map_err(|_| usage("this operation needs a deterministic VPA input")),
        Automaton::Pda(_) => Err(usage("closure operations do not accept pushdown automata")),
    }
}

pub fn closure(op: &str, inputs: &[String], out: &str) -> Result<ExitCode> {
    let arity = match op {
        "union" | "intersection" | "concat" | "shuffle" => 2,
        "complement" | "star" | "reverse" | "prefix" => 1,
        _ => return Err(usage(format!("unknown operation {op:?}"))),
    };
    if inputs.len() != arity {
        return Err(usage(format!("{op} takes {arity} input(s), got {}", inputs.len())));
    }
    let ms: Vec<Automaton> = inputs.iter().map(|p| load_automaton(p)).collect::<Result<_>>()?;
    let all_fsa: Option<Vec<&Fsa>> = ms
        .iter()
        .map(|a| match a {
            Automaton::Fsa(m) => Some(m),
            _ => None,
        })
        .collect();
    let c = |e: closures::ClosureError| usage(e);
    let result: Automaton = match (op, all_fsa) {
        ("shuffle", _) => {
            let Automaton::Fsa(r) = &ms[1] else {
                return Err(usage("the second shuffle input must be a finite automaton"));
            };
            closures::shuffle(&as_vpa(&ms[0])?, r).map_err(c)?.into()
        }
        (_, Some(f)) => match op {
            "union" => closures::reg_union(f[0], f[1]).map_err(c)?,
            "intersection" => closures::reg_intersection(f[0], f[1]).map_err(c)?,
            "concat" => closures::reg_concat(f[0], f[1]).map_err(c)?,
            "complement" => closures::reg_complement(f[0]),
            "star" => closures::reg_star(f[0]),
            "reverse" => closures::reg_reverse(f[0]),
            _ => closures::reg_prefix(f[0]),
        }
        .into(),
        (_, None) => {
            let vs: Vec<Vpa> = ms.iter().map(as_vpa).collect::<Result<_>>()?;
            match op {
                "union" => closures::vpl_union(&vs[0], &vs[1]).map_err(c)?.into(),
                "intersection" => closures::vpl_intersection(&vs[0], &vs[1]).map_err(c)?.into(),
                "concat" => closures::vpl_concat(&vs[0], &vs[1]).map_err(c)?.into(),
                "complement" => closures::vpl_complement(&vs[0]).into(),
                "star" => closures::vpl_star(&vs[0]).into(),
                "reverse" => closures::vpl_reverse(&vs[0]).into(),
                _ => {
                    return Err(usage(
                        "the prefix closure of a VPA is decided per word: use `nestword check --prefix`",
                    ))
                }
            }
        }
    };
    let result = match result {
        Automaton::Nvpa(n) => determinize_if_possible(n),
        other => other,
    };
    write(out, &result.to_json())?;
    println!("wrote {out}");
    println!("kind: {}", result.kind());
    println!("deterministic: {}", yes_no(result.is_deterministic()));
    Ok(ExitCode::SUCCESS)
}

/// Structurally deterministic results are stored as plain VPAs.
fn determinize_if_possible(n: Nvpa) -> Automaton {
    match Vpa::try_from(&n) {
        Ok(m) => m.into(),
        Err(_) => n.into(),
    }
}

pub fn oracle(group: &str, text: &str) -> Result<ExitCode> {
    let spec = load_group(group)?;
    let w = Word::parse(spec.alphabet(), text).map_err(usage)?;
    let trivial = groups::is_identity(&spec, &w).map_err(usage)?;
    Ok(verdict(trivial, "identity", "not identity"))
}
