fn main() {
    std::process::exit(qdl::cli::run(std::env::args_os()));
}
