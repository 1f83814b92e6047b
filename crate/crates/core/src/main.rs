fn main() {
    std::process::exit(su2_fourier::cli::run(std::env::args_os()));
}
