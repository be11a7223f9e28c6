#pragma once

#define SHAQ_VERSION "0.1.0"
