fn main() {
    std::process::exit(juristat::cli::run(std::env::args_os()));
}
