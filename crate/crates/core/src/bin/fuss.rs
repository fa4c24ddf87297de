fn main() -> std::process::ExitCode {
    fuss::cli::main_with_args(std::env::args_os())
}
