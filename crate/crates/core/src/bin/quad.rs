fn main() {
    std::process::exit(quadcf::cli::run(std::env::args_os()));
}
