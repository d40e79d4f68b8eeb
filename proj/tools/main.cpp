// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#include <cstdio>

int main()
{
    std::puts("souk: CLI wiring pending");
    return 0;
}
