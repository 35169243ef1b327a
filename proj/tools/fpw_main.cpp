#include <cstdio>

int main() {
    std::puts("fpw: placeholder");
    return 0;
}
