use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geode::coeffring::{format_rational, CoeffCodec, CoeffText, PolyT};
use geode::combinat::{enumerate_lukasiewicz, format_word, parking_quasi_ribbons, Composition};
use geode::gfseries::{specialize_ncsf, ClosedForm, GfSeries, Specializable, Specialization};
use geode::json::series_to_json;
use geode::lagrange::{
    eta_t, g_t, gamma_t, geode, gessel_gamma, h_t, prime_series, solve_g, theta_t,
};
use geode::ncsf::{Basis, NcsfSeries};
use geode::schroeder::{enumerate_prime_schroeder, enumerate_schroeder, g_e, gamma_e, ERoute};
use geode::verify::{self, Suite};

#[derive(Parser)]
#[command(
    name = "geode",
    version,
    about = "Noncommutative Lagrange series, geodes and their generalizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand g, gamma, h, eta or the Gessel form of gamma.
    Expand {
        #[arg(long, value_enum)]
        series: SeriesName,
        /// `polyt` gives the t-hierarchy version of the series.
        #[arg(long, value_enum, default_value = "int")]
        ring: Ring,
        #[arg(long, default_value = "S", value_parser = parse_basis)]
        basis: Basis,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The k-Lagrange series g^(k) for an integer k (negative k allowed).
    Klagrange {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value = "S", value_parser = parse_basis)]
        basis: Basis,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The e-Lagrange series g^[e], or the e-geode with --geode.
    Eseries {
        #[arg(long, value_enum, default_value = "formula")]
        route: Route,
        /// Print gamma^[e] = g^[e] S_k^-1 for this k instead.
        #[arg(long)]
        geode: Option<u32>,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate trees or parking quasi-ribbons.
    Trees {
        #[arg(long, value_enum)]
        kind: TreeKind,
        /// Size, for the tree kinds.
        #[arg(long, required_unless_present = "shape")]
        n: Option<u32>,
        /// Ribbon shape such as 3,1, for pqr.
        #[arg(long, value_parser = parse_composition)]
        shape: Option<Composition>,
        /// Print only the number of objects.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a commutative specialization and optionally compare with its closed form.
    Specialize {
        #[arg(long, value_parser = parse_specialization)]
        map: Specialization,
        /// Defaults: g for catalan, g^[e] for zq, gamma otherwise.
        #[arg(long, value_enum)]
        series: Option<SpecSeries>,
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// Compare with the closed form and exit 1 on disagreement.
        #[arg(long)]
        compare: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exit 1 on any hard failure.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    G,
    Gamma,
    H,
    Eta,
    Gessel,
    /// Only with --ring polyt.
    Theta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Int,
    Polyt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    System,
    Trees,
    Formula,
    Equation,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeKind {
    Lukasiewicz,
    Schroeder,
    PrimeSchroeder,
    Pqr,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpecSeries {
    G,
    Gamma,
    Ge,
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_specialization(s: &str) -> Result<Specialization, String> {
    Specialization::from_name(s).map_err(|e| e.to_string())
}

fn parse_composition(s: &str) -> Result<Composition, String> {
    Composition::parse(s).map_err(|e| e.to_string())
}

/// A failure that is the caller's fault: bad flag combinations.
struct Usage(String);

type Outcome = Result<(Vec<String>, bool), Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((lines, ok)) => {
            for l in lines {
                println!("{l}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Expand {
            series,
            ring,
            basis,
            degree,
            format,
        } => expand(series, ring, basis, degree, format),
        Command::Klagrange {
            k,
            basis,
            degree,
            format,
        } => {
            let s = g_t(degree)
                .eval_t_integer(k)
                .ok_or_else(|| Usage("non-integer coefficient".into()))?;
            Ok((emit(&format!("g^({k})"), &s, basis, format), true))
        }
        Command::Eseries {
            route,
            geode: k,
            degree,
            format,
        } => {
            let route = match route {
                Route::System => ERoute::System,
                Route::Trees => ERoute::PrimeTrees,
                Route::Formula => ERoute::Formula,
                Route::Equation => ERoute::Equation,
            };
            let lines = match k {
                Some(0) => return Err(Usage("--geode needs k >= 1".into())),
                Some(k) => emit("gamma^[e]", &gamma_e(degree, k), Basis::S, format),
                None => emit("g^[e]", &g_e(degree, route), Basis::S, format),
            };
            Ok((lines, true))
        }
        Command::Trees {
            kind,
            n,
            shape,
            count,
            format,
        } => trees(kind, n, shape, count, format),
        Command::Specialize {
            map,
            series,
            degree,
            compare,
            format,
        } => specialize(map, series, degree, compare, format),
        Command::Verify { suite, degree } => {
            let report = verify::run(suite, degree).map_err(|e| Usage(e.to_string()))?;
            Ok((report.lines(), report.passed()))
        }
    }
}

fn emit<C: CoeffText + CoeffCodec>(
    name: &str,
    s: &NcsfSeries<C>,
    basis: Basis,
    format: Format,
) -> Vec<String> {
    let s = s.convert(basis);
    match format {
        Format::Text => s.render_lines(name),
        Format::Json => vec![pretty(&series_to_json(name, &s))],
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn expand(series: SeriesName, ring: Ring, basis: Basis, n: u32, format: Format) -> Outcome {
    let lines = match ring {
        Ring::Int => match series {
            SeriesName::G => emit("g", &solve_g(n), basis, format),
            SeriesName::Gamma => emit("gamma", &geode(n, 1), basis, format),
            SeriesName::H => emit("h", &prime_series(n).0, basis, format),
            SeriesName::Eta => emit("eta", &prime_series(n).1, basis, format),
            SeriesName::Gessel => emit("gamma", &gessel_gamma(n), basis, format),
            SeriesName::Theta => return Err(Usage("theta needs --ring polyt".into())),
        },
        Ring::Polyt => {
            let (name, s): (&str, Result<NcsfSeries<PolyT>, _>) = match series {
                SeriesName::G => ("g^(t)", Ok(g_t(n))),
                SeriesName::Gamma => ("gamma^(t)", gamma_t(n)),
                SeriesName::H => ("h^(t)", h_t(n)),
                SeriesName::Eta => ("eta^(t)", eta_t(n)),
                SeriesName::Theta => ("theta^(t)", theta_t(n)),
                SeriesName::Gessel => {
                    return Err(Usage(
                        "the Gessel form is only available with --ring int".into(),
                    ))
                }
            };
            let s = s.map_err(|e| Usage(e.to_string()))?;
            emit(name, &s, basis, format)
        }
    };
    Ok((lines, true))
}

fn trees(
    kind: TreeKind,
    n: Option<u32>,
    shape: Option<Composition>,
    count: bool,
    format: Format,
) -> Outcome {
    let size = || n.ok_or_else(|| Usage("--n is required for this kind".into()));
    let (label, items): (String, Vec<String>) = match kind {
        TreeKind::Lukasiewicz => {
            let n = size()?;
            (
                n.to_string(),
                enumerate_lukasiewicz(n)
                    .iter()
                    .map(|c| format_word(c.letters()))
                    .collect(),
            )
        }
        TreeKind::Schroeder => {
            let n = size()?;
            (
                n.to_string(),
                enumerate_schroeder(n)
                    .iter()
                    .map(|c| format_word(c.letters()))
                    .collect(),
            )
        }
        TreeKind::PrimeSchroeder => {
            let n = size()?;
            (
                n.to_string(),
                enumerate_prime_schroeder(n)
                    .iter()
                    .map(|c| format_word(c.letters()))
                    .collect(),
            )
        }
        TreeKind::Pqr => {
            let shape = shape.ok_or_else(|| Usage("--shape is required for pqr".into()))?;
            let items = parking_quasi_ribbons(&shape)
                .iter()
                .map(|segs| {
                    segs.iter()
                        .map(|s| format_word(s))
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .collect();
            (
                shape
                    .parts()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                items,
            )
        }
    };
    let kind_name = kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let lines = match (format, count) {
        (Format::Text, true) => vec![items.len().to_string()],
        (Format::Text, false) => items,
        (Format::Json, _) => {
            let mut v = json!({"kind": kind_name, "size": label, "count": items.len()});
            if !count {
                v["items"] = json!(items);
            }
            vec![pretty(&v)]
        }
    };
    Ok((lines, true))
}

fn closed_form_for(map: Specialization) -> ClosedForm {
    match map {
        Specialization::Catalan => ClosedForm::Catalan,
        Specialization::CoeffSum => ClosedForm::Geode,
        Specialization::RibbonU => ClosedForm::RibbonSum,
        Specialization::LambdaAbs => ClosedForm::LambdaSum,
        Specialization::Zq => ClosedForm::Zq,
    }
}

fn specialize(
    map: Specialization,
    series: Option<SpecSeries>,
    n: u32,
    compare: bool,
    format: Format,
) -> Outcome {
    let series = series.unwrap_or(match map {
        Specialization::Catalan => SpecSeries::G,
        Specialization::Zq => SpecSeries::Ge,
        _ => SpecSeries::Gamma,
    });
    let (name, result) = match series {
        SpecSeries::G => ("g", spec(&solve_g(n), map)),
        SpecSeries::Gamma => ("gamma", spec(&geode(n, 1), map)),
        SpecSeries::Ge => ("g^[e]", spec(&g_e(n, ERoute::Formula), map)),
    };
    let got = result?;
    let closed = if compare {
        Some(
            closed_form_for(map)
                .expand(n)
                .map_err(|e| Usage(e.to_string()))?,
        )
    } else {
        None
    };
    let agree = closed.as_ref().is_none_or(|c| c == &got);
    let lines = match format {
        Format::Text => {
            let mut lines = vec![format!("{name} under {map}:")];
            lines.extend(rows(&got));
            if let Some(c) = &closed {
                lines.push(format!("closed form {}:", closed_form_for(map).name()));
                lines.extend(rows(c));
                lines.push(if agree {
                    "agree".to_string()
                } else {
                    "DISAGREE".to_string()
                });
            }
            lines
        }
        Format::Json => {
            let mut v =
                json!({"series": name, "map": map.name(), "coefficients": coeff_json(&got)});
            if let Some(c) = &closed {
                v["closed_form"] = coeff_json(c);
                v["agree"] = json!(agree);
            }
            vec![pretty(&v)]
        }
    };
    Ok((lines, agree))
}

fn spec<C: Specializable>(s: &NcsfSeries<C>, map: Specialization) -> Result<GfSeries, Usage> {
    specialize_ncsf(s, map).map_err(|e| Usage(e.to_string()))
}

/// Univariate: one line of coefficients. Bivariate: one line per power of
/// the first variable, listing coefficients of the second.
fn rows(s: &GfSeries) -> Vec<String> {
    match s {
        GfSeries::Uni(u) => vec![u
            .coeffs()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", ")],
        GfSeries::Bi(b) => (0..=b.order())
            .map(|i| {
                let col = b.column(i);
                let cs: Vec<String> = col.coeffs().iter().map(format_rational).collect();
                format!(
                    "z^{i}: {}",
                    if cs.is_empty() {
                        "0".to_string()
                    } else {
                        cs.join(", ")
                    }
                )
            })
            .collect(),
    }
}

fn coeff_json(s: &GfSeries) -> Value {
    match s {
        GfSeries::Uni(u) => json!(u.coeffs().iter().map(format_rational).collect::<Vec<_>>()),
        GfSeries::Bi(b) => json!((0..=b.order())
            .map(|i| b
                .column(i)
                .coeffs()
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    }
}
