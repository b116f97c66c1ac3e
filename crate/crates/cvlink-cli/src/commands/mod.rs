//! Subcommand implementations and the flag/config/default resolution they
//! share.

pub mod run;
pub mod sweep;
pub mod verify;

use std::path::PathBuf;

use clap::ValueEnum;

use crate::config::{FileConfig, GridSpec};

/// The four evaluable schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    /// One-way probing: light passes system 1, the lossy line, system 2.
    Asymmetric,
    /// Two-way probing with counter-propagating passes.
    Symmetric,
    /// Two-mode squeezed source in the middle, loss on both arms.
    Epr,
    /// One sender distributing to M receivers through a splitter tree.
    Polygamy,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Asymmetric => "asymmetric",
            Scheme::Symmetric => "symmetric",
            Scheme::Epr => "epr",
            Scheme::Polygamy => "polygamy",
        }
    }
}

/// Raw shared flags as parsed; `None` means "not given on the command line".
#[derive(Debug, Clone, Default)]
pub struct RawShared {
    pub scheme_pos: Option<Scheme>,
    pub scheme: Option<Scheme>,
    pub epsilon: Option<f64>,
    pub r: Option<f64>,
    pub kappa2: Option<f64>,
    pub tau: Option<f64>,
    pub t: Option<f64>,
    pub out: Option<String>,
    pub grid_eps: Option<String>,
    pub grid_r: Option<String>,
    pub m_sites: Option<usize>,
    pub config: Option<PathBuf>,
    pub asymptotic_time: Option<f64>,
}

/// Fully resolved parameters: flags override the config file, which
/// overrides built-in defaults (τκ² = 1e-4, 50×50 grid).
#[derive(Debug, Clone)]
pub struct Effective {
    pub scheme: Scheme,
    pub epsilon: Option<f64>,
    pub r: Option<f64>,
    pub kappa2: f64,
    pub tau: f64,
    pub t: Option<f64>,
    pub m_sites: usize,
    pub grid_eps: GridSpec,
    pub grid_r: GridSpec,
    pub asymptotic_time: Option<f64>,
    pub out: Option<String>,
}

pub const DEFAULT_GRID_EPS: GridSpec = GridSpec {
    lo: 0.0,
    hi: 0.98,
    n: 50,
    log: false,
};

pub const DEFAULT_GRID_R: GridSpec = GridSpec {
    lo: 0.1,
    hi: 10.0,
    n: 50,
    log: true,
};

pub fn resolve(raw: &RawShared) -> Result<Effective, String> {
    let cfg = match &raw.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let scheme = match (raw.scheme_pos, raw.scheme) {
        (Some(a), Some(b)) if a != b => {
            return Err(format!(
                "conflicting schemes: positional {} vs --scheme {}",
                a.name(),
                b.name()
            ));
        }
        (a, b) => a.or(b).ok_or_else(|| {
            "missing scheme: pass one of asymmetric, symmetric, epr, polygamy (positionally or via --scheme)"
                .to_string()
        })?,
    };
    let kappa2 = match raw.kappa2 {
        Some(v) => v,
        None => cfg.get_f64("kappa2")?.unwrap_or(1.0),
    };
    if !(kappa2 > 0.0) || !kappa2.is_finite() {
        return Err(format!(
            "invalid value for --kappa2: coupling rate must be positive and finite (got {kappa2})"
        ));
    }
    let tau = match raw.tau {
        Some(v) => v,
        None => cfg.get_f64("tau")?.unwrap_or(1e-4 / kappa2),
    };
    let epsilon = match raw.epsilon {
        Some(v) => Some(v),
        None => cfg.get_f64("epsilon")?,
    };
    let r = match raw.r {
        Some(v) => Some(v),
        None => cfg.get_f64("r")?,
    };
    let t = match raw.t {
        Some(v) => Some(v),
        None => cfg.get_f64("t")?,
    };
    let m_sites = match raw.m_sites {
        Some(v) => v,
        None => cfg.get_usize("m-sites")?.unwrap_or(2),
    };
    let grid_eps = match (&raw.grid_eps, cfg.get("grid-eps")) {
        (Some(s), _) => GridSpec::parse(s, false, "--grid-eps")?,
        (None, Some(s)) => GridSpec::parse(s, false, "config key grid-eps")?,
        (None, None) => DEFAULT_GRID_EPS,
    };
    let grid_r = match (&raw.grid_r, cfg.get("grid-r")) {
        (Some(s), _) => GridSpec::parse(s, true, "--grid-r")?,
        (None, Some(s)) => GridSpec::parse(s, true, "config key grid-r")?,
        (None, None) => DEFAULT_GRID_R,
    };
    let asymptotic_time = match raw.asymptotic_time {
        Some(v) => Some(v),
        None => cfg.get_f64("asymptotic-time")?,
    };
    if let Some(t_asym) = asymptotic_time {
        if !(t_asym > 0.0) || !t_asym.is_finite() {
            return Err(format!(
                "invalid value for --asymptotic-time: must be positive and finite (got {t_asym})"
            ));
        }
    }
    Ok(Effective {
        scheme,
        epsilon,
        r,
        kappa2,
        tau,
        t,
        m_sites,
        grid_eps,
        grid_r,
        asymptotic_time,
        out: raw.out.clone(),
    })
}

/// Renders a core-library error as a usage message naming the flag the
/// offending value came from.
pub fn core_error(err: cvlink_core::Error) -> String {
    match err {
        cvlink_core::Error::InvalidParameter {
            name,
            value,
            requirement,
        } => format!("invalid value for --{name}: {requirement} (got {value})"),
        cvlink_core::Error::InvalidCount {
            name,
            value,
            requirement,
        } => format!("invalid value for --{name}: {requirement} (got {value})"),
        other => format!("{other}"),
    }
}

/// Fetches a required scalar, naming the flag if absent.
pub fn require(value: Option<f64>, flag: &str, scheme: Scheme) -> Result<f64, String> {
    value.ok_or_else(|| {
        format!(
            "missing value for {flag} (required for scheme {})",
            scheme.name()
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_kappa2() {
        let raw = RawShared {
            scheme_pos: Some(Scheme::Asymmetric),
            kappa2: Some(4.0),
            ..RawShared::default()
        };
        let eff = resolve(&raw).unwrap();
        assert_eq!(eff.kappa2, 4.0);
        assert_eq!(eff.tau, 1e-4 / 4.0);
        assert_eq!(eff.grid_eps, DEFAULT_GRID_EPS);
        assert_eq!(eff.grid_r.n, 50);
    }

    #[test]
    fn flag_beats_config_beats_default() {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "epsilon = 0.5\nr = 3").unwrap();
        let raw = RawShared {
            scheme_pos: Some(Scheme::Epr),
            epsilon: Some(0.36),
            config: Some(f.path().to_path_buf()),
            ..RawShared::default()
        };
        let eff = resolve(&raw).unwrap();
        assert_eq!(eff.epsilon, Some(0.36));
        assert_eq!(eff.r, Some(3.0));
        assert_eq!(eff.tau, 1e-4);
    }

    #[test]
    fn conflicting_schemes_rejected() {
        let raw = RawShared {
            scheme_pos: Some(Scheme::Epr),
            scheme: Some(Scheme::Symmetric),
            ..RawShared::default()
        };
        assert!(resolve(&raw).unwrap_err().contains("conflicting"));
    }

    #[test]
    fn missing_scheme_rejected() {
        let raw = RawShared::default();
        assert!(resolve(&raw).unwrap_err().contains("missing scheme"));
    }
}
