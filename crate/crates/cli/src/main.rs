fn main() {
    std::process::exit(dbo_cli::run(std::env::args_os()));
}
