use std::process::ExitCode;

fn main() -> ExitCode {
    mlgeom::cli::main()
}
