//! CSV serialization: comma separated, `.` decimal, LF line endings, header
//! row, floats at 12 significant digits. Output is a pure function of the
//! records, so identical inputs give byte-identical files.

/// Formats a float with 12 significant digits in normalized scientific
/// notation. Infinities and NaN serialize as `inf`/`-inf`/`nan`, which Rust's
/// `f64` parser accepts back.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn parse_f64(field: &str, line: usize, col: &str) -> Result<f64, String> {
    field
        .parse::<f64>()
        .map_err(|_| format!("CSV line {line}: column {col} is not a number: {field:?}"))
}

/// One row of a `sweep` table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub scheme: String,
    pub epsilon: f64,
    pub r: f64,
    /// `None` encodes the asymptotic (infinite-time) limit.
    pub t: Option<f64>,
    pub n: f64,
    pub log_negativity: f64,
    pub delta: f64,
    pub f_symmetric: f64,
    pub f_bk_opt: f64,
}

pub const SWEEP_HEADER: &str = "scheme,epsilon,r,t,N,log_negativity,delta,F_symmetric,F_bk_opt";

pub fn emit_sweep(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for rec in records {
        let t = match rec.t {
            Some(t) => format_sig(t),
            None => "asymptotic".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            rec.scheme,
            format_sig(rec.epsilon),
            format_sig(rec.r),
            t,
            format_sig(rec.n),
            format_sig(rec.log_negativity),
            format_sig(rec.delta),
            format_sig(rec.f_symmetric),
            format_sig(rec.f_bk_opt),
        ));
    }
    out
}

pub fn parse_sweep(text: &str) -> Result<Vec<SweepRecord>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SWEEP_HEADER => {}
        other => return Err(format!("missing or wrong sweep header: {other:?}")),
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let lineno = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(format!("CSV line {lineno}: expected 9 fields, got {}", fields.len()));
        }
        let t = if fields[3] == "asymptotic" {
            None
        } else {
            Some(parse_f64(fields[3], lineno, "t")?)
        };
        records.push(SweepRecord {
            scheme: fields[0].to_string(),
            epsilon: parse_f64(fields[1], lineno, "epsilon")?,
            r: parse_f64(fields[2], lineno, "r")?,
            t,
            n: parse_f64(fields[4], lineno, "N")?,
            log_negativity: parse_f64(fields[5], lineno, "log_negativity")?,
            delta: parse_f64(fields[6], lineno, "delta")?,
            f_symmetric: parse_f64(fields[7], lineno, "F_symmetric")?,
            f_bk_opt: parse_f64(fields[8], lineno, "F_bk_opt")?,
        });
    }
    Ok(records)
}

/// One row of a `run` time series. `pair` is present only for the
/// splitter-tree scheme, where one row is emitted per receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub scheme: String,
    pub epsilon: f64,
    pub r: f64,
    pub kappa2: f64,
    pub tau: f64,
    pub t: f64,
    pub v_x1: f64,
    pub v_p1: f64,
    pub v_x2: f64,
    pub v_p2: f64,
    pub c_x: f64,
    pub c_p: f64,
    pub n: f64,
    pub log_negativity: f64,
    pub delta: f64,
    pub pair: Option<usize>,
}

pub const RUN_HEADER: &str =
    "scheme,epsilon,r,kappa2,tau,t,v_x1,v_p1,v_x2,v_p2,c_x,c_p,N,log_negativity,delta";

pub fn run_header(with_pair: bool) -> String {
    if with_pair {
        format!("{RUN_HEADER},pair")
    } else {
        RUN_HEADER.to_string()
    }
}

pub fn emit_run(records: &[RunRecord], with_pair: bool) -> String {
    let mut out = String::with_capacity(128 * (records.len() + 1));
    out.push_str(&run_header(with_pair));
    out.push('\n');
    for rec in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            rec.scheme,
            format_sig(rec.epsilon),
            format_sig(rec.r),
            format_sig(rec.kappa2),
            format_sig(rec.tau),
            format_sig(rec.t),
            format_sig(rec.v_x1),
            format_sig(rec.v_p1),
            format_sig(rec.v_x2),
            format_sig(rec.v_p2),
            format_sig(rec.c_x),
            format_sig(rec.c_p),
            format_sig(rec.n),
            format_sig(rec.log_negativity),
            format_sig(rec.delta),
        ));
        if with_pair {
            out.push_str(&format!(",{}", rec.pair.expect("pair column requested")));
        }
        out.push('\n');
    }
    out
}

pub fn parse_run(text: &str) -> Result<Vec<RunRecord>, String> {
    let mut lines = text.lines();
    let with_pair = match lines.next() {
        Some(h) if h == RUN_HEADER => false,
        Some(h) if h == run_header(true) => true,
        other => return Err(format!("missing or wrong run header: {other:?}")),
    };
    let expect = if with_pair { 16 } else { 15 };
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let lineno = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expect {
            return Err(format!(
                "CSV line {lineno}: expected {expect} fields, got {}",
                fields.len()
            ));
        }
        let pair = if with_pair {
            Some(
                fields[15]
                    .parse::<usize>()
                    .map_err(|_| format!("CSV line {lineno}: pair is not a count"))?,
            )
        } else {
            None
        };
        records.push(RunRecord {
            scheme: fields[0].to_string(),
            epsilon: parse_f64(fields[1], lineno, "epsilon")?,
            r: parse_f64(fields[2], lineno, "r")?,
            kappa2: parse_f64(fields[3], lineno, "kappa2")?,
            tau: parse_f64(fields[4], lineno, "tau")?,
            t: parse_f64(fields[5], lineno, "t")?,
            v_x1: parse_f64(fields[6], lineno, "v_x1")?,
            v_p1: parse_f64(fields[7], lineno, "v_p1")?,
            v_x2: parse_f64(fields[8], lineno, "v_x2")?,
            v_p2: parse_f64(fields[9], lineno, "v_p2")?,
            c_x: parse_f64(fields[10], lineno, "c_x")?,
            c_p: parse_f64(fields[11], lineno, "c_p")?,
            n: parse_f64(fields[12], lineno, "N")?,
            log_negativity: parse_f64(fields[13], lineno, "log_negativity")?,
            delta: parse_f64(fields[14], lineno, "delta")?,
            pair,
        });
    }
    Ok(records)
}
