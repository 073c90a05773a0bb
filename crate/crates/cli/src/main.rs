fn main() {
    std::process::exit(cpswf_cli::run(std::env::args_os()));
}
