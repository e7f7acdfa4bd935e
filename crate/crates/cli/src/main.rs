use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use torus_homology::algebra::Poly;
use torus_homology::cherednik::{check_quasis, irreducible_character};
use torus_homology::crosscheck::{
    crosscheck, default_q_order, NormalizationRegistry, REGISTRY_PATH,
};
use torus_homology::daha::{daha_superpoly, homological_reduced, reduced, TorusKnot};
use torus_homology::emit::{emit, Format, HomologyOutput, KoszulOutput, SymOutput, Tabular};
use torus_homology::error::Error;
use torus_homology::hilbert::{os_homfly, os_reduced};
use torus_homology::homstruct::{
    closed_form_coefficient, colored_superpoly_62_63, colored_superpoly_poly, cyclotomic_extract,
    predict, verify_growth, verify_mirror, verify_self_symmetry, verify_thin, QuadGradedSpace,
    TwistFamilyKnot,
};
use torus_homology::koszul::{apply_differential, graded_basis, Differential};
use torus_homology::macdonald::{macdonald_norm, macdonald_poly, Basis};
use torus_homology::tableaux::Partition;

#[derive(Parser)]
#[command(
    name = "torus",
    version,
    about = "Superpolynomials and colored HOMFLY homology of torus knots"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json")]
    format: Fmt,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// Reduced, in homological variables (a, q, t).
    Homological,
    /// Reduced, in DAHA variables.
    Reduced,
    /// Unreduced, in DAHA variables.
    Unreduced,
}

#[derive(Clone, Copy, ValueEnum)]
enum MacBasis {
    Monomial,
    Powersum,
    Macdonald,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    SelfSymmetry,
    Mirror,
    Growth,
    Thin,
}

#[derive(Subcommand)]
enum Cmd {
    /// DAHA superpolynomial of T(m,n).
    Superpoly {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "homological")]
        form: Form,
    },
    /// Monomial basis of a Koszul model, optionally with the homology of a differential.
    Koszul {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        color: usize,
        /// Use the unreduced model.
        #[arg(long)]
        unreduced: bool,
        /// dN:K, colored+:K, colored-:K or cancel:I.
        #[arg(long)]
        differential: Option<String>,
        /// Compare the normalized character against a golden generator file.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Macdonald polynomial M_λ.
    Macdonald {
        /// Partition, e.g. 2,1.
        #[arg(long)]
        partition: String,
        #[arg(long, default_value = "monomial")]
        basis: MacBasis,
        /// Check the Gram-Schmidt norm against the box product.
        #[arg(long)]
        check_norm: bool,
    },
    /// Graded character of L_{m/n}, or the comparison with the Hilbert series.
    Cherednik {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        quasis: bool,
        #[arg(long)]
        q_order: Option<usize>,
    },
    /// HOMFLY polynomial from nested Hilbert schemes of the singularity x^m = y^n.
    Hilb {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q_order: Option<usize>,
        /// Print the unreduced q-series instead.
        #[arg(long)]
        unreduced: bool,
    },
    /// Structural property of quadruply graded data.
    Verify {
        #[arg(long)]
        property: Property,
        #[arg(long)]
        input: PathBuf,
        /// Partner data for mirror and growth.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Colored superpolynomials of 6_2 and 6_3 and their cyclotomic expansion.
    Cyclotomic {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        color: usize,
        /// Extract the expansion from lower colors and re-predict the requested one.
        #[arg(long)]
        extract: bool,
        /// Highest color used for extraction.
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Run every route on T(m,n) and reconcile them.
    Crosscheck {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        color: usize,
        #[arg(long)]
        q_order: Option<usize>,
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Do not write new registry keys.
        #[arg(long)]
        no_record: bool,
    },
}

enum Failure {
    Mismatch(String),
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<Option<String>, Failure>;

struct Out {
    format: Format,
    buf: Vec<u8>,
}

impl Out {
    fn put<T: Serialize + Tabular>(&mut self, obj: &T) {
        self.buf.extend(emit(obj, self.format));
    }
}

fn read_space(path: &PathBuf) -> Result<QuadGradedSpace, Failure> {
    let s =
        fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn read_golden(path: &PathBuf) -> Result<Poly, Failure> {
    #[derive(serde::Deserialize)]
    struct Golden {
        generators: Vec<[i32; 4]>,
    }
    let s =
        fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    let g: Golden =
        serde_json::from_str(&s).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    let space = QuadGradedSpace::from_multiset(
        1,
        1,
        torus_homology::homstruct::Variant::Plain,
        g.generators.into_iter().map(|d| (d, 1)).collect(),
    );
    Ok(space.poincare())
}

fn run(cmd: Cmd, out: &mut Out) -> Outcome {
    match cmd {
        Cmd::Superpoly { m, n, form } => {
            let k = TorusKnot::new(m, n)?;
            let p = match form {
                Form::Homological => homological_reduced(k)?,
                Form::Reduced => reduced(&daha_superpoly(k)?)?,
                Form::Unreduced => daha_superpoly(k)?.value,
            };
            out.put(&p);
            Ok(None)
        }
        Cmd::Koszul {
            m,
            n,
            color,
            unreduced,
            differential,
            golden,
        } => {
            let k = TorusKnot::new(m, n)?;
            let mut basis = graded_basis(&k, color, !unreduced)?;
            if let Some(d) = differential {
                let h = apply_differential(&mut basis, Differential::parse(&d)?)?;
                out.put(&HomologyOutput::new(&d, &h));
                return Ok(None);
            }
            let summary = KoszulOutput::from(&basis);
            out.put(&summary);
            if let Some(path) = golden {
                let g = read_golden(&path)?;
                if g != summary.normalized_character {
                    let residual = &summary.normalized_character - &g;
                    return Err(Failure::Mismatch(format!(
                        "differs from {}: residual {residual}",
                        path.display()
                    )));
                }
                return Ok(Some(format!("matches {}", path.display())));
            }
            Ok(None)
        }
        Cmd::Macdonald {
            partition,
            basis,
            check_norm,
        } => {
            let lambda = Partition::parse(&partition)?;
            let target = match basis {
                MacBasis::Monomial => Basis::Monomial,
                MacBasis::Powersum => Basis::Powersum,
                MacBasis::Macdonald => Basis::Macdonald,
            };
            let f = macdonald_poly(&lambda)?.to_basis(target)?;
            out.put(&SymOutput::new(&format!("M{lambda}"), &f));
            if check_norm {
                let gs = torus_homology::macdonald::sym::gram_schmidt_norm(&lambda)?;
                let closed = macdonald_norm(&lambda);
                if !gs.sub(&closed).is_zero() {
                    return Err(Failure::Mismatch(format!(
                        "norm {gs} differs from box product {closed}"
                    )));
                }
                return Ok(Some(format!("norm {closed}")));
            }
            Ok(None)
        }
        Cmd::Cherednik {
            m,
            n,
            quasis,
            q_order,
        } => {
            if quasis {
                let q = q_order.unwrap_or_else(|| default_q_order(m, n));
                match check_quasis(m, n, q) {
                    Ok(rep) => out.put(&rep),
                    Err(Error::Consistency(msg)) => return Err(Failure::Mismatch(msg)),
                    Err(e) => return Err(e.into()),
                }
            } else {
                out.put(&irreducible_character(m, n, 4 * (m as i32) * (n as i32))?);
            }
            Ok(None)
        }
        Cmd::Hilb {
            m,
            n,
            q_order,
            unreduced,
        } => {
            let k = TorusKnot::new(m, n)?;
            let q = q_order.unwrap_or_else(|| default_q_order(m, n));
            let p = if unreduced {
                os_homfly(k, q)?
            } else {
                os_reduced(k, q)?
            };
            out.put(&p);
            Ok(None)
        }
        Cmd::Verify {
            property,
            input,
            against,
        } => {
            let s = read_space(&input)?;
            let partner = || -> Result<QuadGradedSpace, Failure> {
                match &against {
                    Some(p) => read_space(p),
                    None => Err(Failure::Error("this property needs --against".into())),
                }
            };
            let report = match property {
                Property::SelfSymmetry => verify_self_symmetry(&s),
                Property::Thin => verify_thin(&s),
                Property::Mirror => verify_mirror(&s, &partner()?),
                Property::Growth => verify_growth(&s, &partner()?),
            };
            out.put(&report);
            if report.pass {
                Ok(None)
            } else {
                Err(Failure::Mismatch(format!("{} fails", report.property)))
            }
        }
        Cmd::Cyclotomic {
            knot,
            color,
            extract,
            upto,
        } => {
            let kn: TwistFamilyKnot = knot.parse()?;
            if !extract {
                out.put(&colored_superpoly_62_63(kn, color)?);
                return Ok(None);
            }
            let upto = upto.unwrap_or(color.saturating_sub(1)).max(1);
            let values: Vec<(usize, Poly)> = (0..=upto)
                .map(|r| (r, colored_superpoly_poly(kn, r)))
                .collect();
            let mut data = cyclotomic_extract(kn.name(), &values)?;
            for (k, c) in data.coefficients.iter().enumerate() {
                let closed = closed_form_coefficient(kn, k);
                if *c != closed {
                    out.put(&data);
                    return Err(Failure::Mismatch(format!(
                        "extracted C_{k} differs from the closed form"
                    )));
                }
            }
            out.put(&data);
            let known = data.coefficients.len();
            for k in known..=color {
                data.coefficients.push(closed_form_coefficient(kn, k));
            }
            let direct = colored_superpoly_poly(kn, color);
            let predicted = predict(&data, color)?;
            if predicted != direct {
                return Err(Failure::Mismatch(format!(
                    "prediction for color {color} differs: residual {}",
                    &direct - &predicted
                )));
            }
            Ok(Some(format!(
                "C_0..C_{} extracted from colors <= {upto}; color {color} re-predicted exactly",
                known - 1
            )))
        }
        Cmd::Crosscheck {
            m,
            n,
            color,
            q_order,
            registry,
            no_record,
        } => {
            let path = registry.unwrap_or_else(|| PathBuf::from(REGISTRY_PATH));
            let mut reg = if path.exists() {
                NormalizationRegistry::load(&path)?
            } else {
                NormalizationRegistry::empty()
            };
            let q = q_order.unwrap_or_else(|| default_q_order(m, n));
            let report = crosscheck(m, n, color, q, &mut reg)?;
            out.put(&report);
            if reg.is_dirty() && !no_record {
                reg.save(&path)?;
            }
            if report.passed() {
                Ok(None)
            } else {
                let failed: Vec<&str> = report
                    .reconciliations
                    .iter()
                    .filter(|r| r.status == torus_homology::crosscheck::Status::Fail)
                    .map(|r| r.pair.as_str())
                    .collect();
                Err(Failure::Mismatch(format!("failed: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        Fmt::Json => Format::Json,
        Fmt::Table => Format::Table,
    };
    let mut out = Out {
        format,
        buf: Vec::new(),
    };
    let result = run(cli.cmd, &mut out);
    let _ = std::io::stdout().write_all(&out.buf);
    match result {
        Ok(note) => {
            if let Some(n) = note {
                eprintln!("{n}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
