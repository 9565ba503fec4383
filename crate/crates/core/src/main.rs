use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pdm_spectra::cli::tables::{preset, TableId};
use pdm_spectra::cli::{self, report, Format, MethodKind, RunConfig};
use pdm_spectra::{Error, Result};

#[derive(Parser)]
#[command(name = "pdm-spectra", version, about = "Bound-state spectra of position-dependent-mass double heterostructures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound energies by reflection poles, the matching determinant or a closed form
    Spectrum(Common),
    /// |R(E)|^2 on a uniform energy grid (CSV header "E,Rc")
    Scan {
        #[command(flatten)]
        common: Common,
        /// Number of energies in the scan
        #[arg(long)]
        points: Option<usize>,
    },
    /// One bound-state wavefunction from the matching determinant
    Wavefunction {
        #[command(flatten)]
        common: Common,
        /// Level index, ground state = 0
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, requires = "zmax", allow_negative_numbers = true)]
        zmin: Option<f64>,
        #[arg(long, requires = "zmin", allow_negative_numbers = true)]
        zmax: Option<f64>,
        /// Number of sample points
        #[arg(long)]
        points: Option<usize>,
    },
    /// Transcendental and pole spectra side by side
    Compare(Common),
    /// Recompute a published table and print it next to the printed values
    ReproduceTable {
        #[arg(long)]
        table: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "md")]
        format: String,
    },
}

#[derive(Args)]
struct Common {
    /// Table preset T1..T8 supplying the model and window
    #[arg(long, conflicts_with = "config")]
    table: Option<String>,
    /// Row label inside the table preset (default: first row)
    #[arg(long, requires = "table")]
    row: Option<String>,
    /// TOML run configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// bdd, zk, tl, lk, gw or vr:<alpha>
    #[arg(long)]
    ordering: Option<String>,
    /// poles, transcendental or closedform
    #[arg(long)]
    method: Option<String>,
    /// Number of slabs in the step discretization
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, requires = "emax", allow_negative_numbers = true)]
    emin: Option<f64>,
    #[arg(long, requires = "emin", allow_negative_numbers = true)]
    emax: Option<f64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// json, csv or md
    #[arg(long)]
    format: Option<String>,
}

impl Common {
    fn resolve(&self, default_method: MethodKind) -> Result<RunConfig> {
        let mut cfg = match (&self.table, &self.config) {
            (Some(t), _) => {
                let p = preset(t.parse::<TableId>()?);
                let row = match &self.row {
                    Some(label) => p
                        .rows
                        .iter()
                        .find(|r| r.label == label)
                        .ok_or_else(|| Error::Config(format!("table {} has no row '{label}'", p.id)))?,
                    None => &p.rows[0],
                };
                let ordering = self.ordering.as_deref().unwrap_or("bdd").parse()?;
                let mut cfg = RunConfig::new(p.row_model(row)?, p.units, ordering, default_method);
                cfg.window = Some(p.window());
                cfg
            }
            (None, Some(path)) => RunConfig::load(path)?,
            (None, None) => return Err(Error::Config("give a model with --table or --config".into())),
        };
        if let Some(o) = &self.ordering {
            cfg.ordering = o.parse()?;
        }
        if let Some(m) = &self.method {
            cfg.method = m.parse()?;
        } else if self.table.is_some() {
            cfg.method = default_method;
        }
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let (Some(a), Some(b)) = (self.emin, self.emax) {
            cfg.window = Some((a, b));
        }
        if let Some(f) = &self.format {
            cfg.format = f.parse()?;
        }
        if self.out.is_some() {
            cfg.spectrum_out = self.out.clone();
            cfg.scan_out = self.out.clone();
            cfg.wavefunction_out = self.out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<()> {
    cli::init_threads()?;
    match cli.command {
        Command::Spectrum(common) => {
            let cfg = common.resolve(MethodKind::Poles)?;
            let result = cli::spectrum(&cfg)?;
            let unit = cfg.energy_unit();
            let text = match cfg.format {
                Format::Json => report::spectrum_json(&result, unit),
                Format::Csv => report::spectrum_csv(&result),
                Format::Md => report::spectrum_md(&result, unit),
            };
            cli::emit(cfg.spectrum_out.as_deref(), &text)
        }
        Command::Scan { common, points } => {
            let mut cfg = common.resolve(MethodKind::Poles)?;
            if let Some(p) = points {
                cfg.scan_points = p;
            }
            let scan = cli::scan_reflection(&cfg)?;
            let text = match cfg.format {
                Format::Json if common.format.is_some() => report::scan_json(&scan, cfg.energy_unit()),
                _ => report::scan_csv(&scan),
            };
            cli::emit(cfg.scan_out.as_deref(), &text)
        }
        Command::Wavefunction { common, level, zmin, zmax, points } => {
            let mut cfg = common.resolve(MethodKind::Transcendental)?;
            cfg.level = level;
            if let (Some(a), Some(b)) = (zmin, zmax) {
                cfg.z_range = Some((a, b));
            }
            if let Some(p) = points {
                cfg.wave_points = p;
            }
            let psi = cli::wavefunction(&cfg)?;
            cli::emit(cfg.wavefunction_out.as_deref(), &cli::wavefunction_csv(&cfg, &psi)?)
        }
        Command::Compare(common) => {
            let cfg = common.resolve(MethodKind::Compare)?;
            let c = cli::compare(&cfg)?;
            let unit = cfg.energy_unit();
            let text = match common.format.as_deref().map(str::parse::<Format>).transpose()?.unwrap_or(Format::Md) {
                Format::Json => report::comparison_json(&c, unit),
                Format::Csv => report::comparison_csv(&c),
                Format::Md => report::comparison_md(&c, unit),
            };
            cli::emit(cfg.spectrum_out.as_deref(), &text)
        }
        Command::ReproduceTable { table, n, out, format } => {
            let id: TableId = table.parse()?;
            let format: Format = format.parse()?;
            let n = n.unwrap_or(cli::config::TABLE_N);
            if n == 0 {
                return Err(Error::Config("n must be at least 1".into()));
            }
            let t = cli::tables::reproduce_table(id, n)?;
            let text = match format {
                Format::Md => report::table_md(&t),
                Format::Csv => report::table_csv(&t),
                Format::Json => report::table_json(&t),
            };
            cli::emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.code());
            ExitCode::from(if matches!(e, Error::Config(_)) { 2 } else { 1 })
        }
    }
}
