use std::io::Write;

fn main() {
    let result = motivic_forest::cli::run(std::env::args_os());
    let mut out: Box<dyn Write> = match result.status {
        motivic_forest::cli::Status::Usage => Box::new(std::io::stderr()),
        _ => Box::new(std::io::stdout()),
    };
    let _ = out.write_all(result.report.as_bytes());
    let _ = out.flush();
    std::process::exit(result.exit_code());
}
