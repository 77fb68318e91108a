fn main() {
    std::process::exit(inq_cli::run(std::env::args_os()));
}
