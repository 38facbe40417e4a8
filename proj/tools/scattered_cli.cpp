#include "scattered_cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const scattered::cli::Outcome r = scattered::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.text;
  return r.code;
}
