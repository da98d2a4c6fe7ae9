fn main() {
    std::process::exit(linkagelab::cli::run(std::env::args_os()));
}
