#pragma once

// Built-in host sentences and attack commands for synthetic corpora, used
// when no text files are supplied. Hosts are full conversational sentences;
// commands are the short imperative phrases an attacker would embed.

#include <string>
#include <vector>

namespace asrdet {

inline const std::vector<std::string>& default_host_texts() {
    static const std::vector<std::string> hosts = {
        "i wish you wouldn't keep leaving the kitchen lights on all night",
        "the weather looks lovely this afternoon so we should walk to the park",
        "she sells sea shells by the sea shore every summer with her sister",
        "my favorite song played on the radio while we drove across the bridge",
        "the train arrives at seven in the evening if the weather stays clear",
        "we walked along the river after dinner and watched the boats go past",
        "the children are playing in the garden behind the old stone cottage",
        "please remember to water the plants before you leave for work tomorrow",
        "he finished reading the novel last night and started another one today",
        "the coffee shop on the corner is open until ten during the week",
        "a gentle breeze moved through the trees as the sun dropped behind the hills",
        "the meeting has been moved to thursday because the director is traveling",
        "our neighbors adopted a small brown dog from the shelter last weekend",
        "the museum exhibit closes next weekend so we should visit on friday",
        "fresh bread smells wonderful in the morning when the bakery opens early",
        "they painted the old fence bright white before the first frost arrived",
        "the lecture covered the history of printing from woodblocks to modern presses",
        "a flock of geese crossed the grey sky heading south for the winter",
        "grandmother tells the best bedtime stories about the farm where she grew up",
        "the orchestra rehearsed late into the night before the spring concert",
        "sunlight streamed through the kitchen window and warmed the wooden table",
        "the library extended its opening hours during the final exam period",
        "he repaired the bicycle chain himself using tools from the garage",
        "autumn leaves covered the entire path from the gate to the front door",
        "the bakery sold out of cinnamon rolls before nine on saturday morning",
        "two students compared notes before the exam in the quiet corner of the hall",
        "the ferry crosses the harbor every hour from dawn until midnight",
        "her garden grows tomatoes and peppers along the sunny southern wall",
        "the mountain trail was steep but rewarding with views across the valley",
        "rain tapped softly against the roof while we played cards by the fire",
        "the tailor shortened the sleeves slightly and pressed the jacket flat",
        "an old clock ticked above the fireplace in the corner of the study",
        "the chef added a pinch of saffron to the rice before serving dinner",
        "wind turbines lined the distant hills beyond the yellow wheat fields",
        "the choir practiced carols for december in the chapel after school",
        "a lighthouse blinked across the dark water as the storm moved closer",
        "the printer ran out of yellow ink halfway through the travel photos",
        "visitors admired the marble staircase in the entrance of the opera house",
        "the farmer harvested wheat before the storm rolled in from the coast",
        "a quiet melody drifted from the balcony while the guests were arriving"};
    return hosts;
}

inline const std::vector<std::string>& default_commands() {
    static const std::vector<std::string> commands = {
        "a sight for sore eyes",
        "open the front door",
        "turn off all cameras",
        "transfer money to account nine",
        "call the emergency number",
        "delete all my photos",
        "unlock the garage door",
        "order five hundred gift cards",
        "disable the burglar alarm",
        "send my location to unknown number",
        "read my messages aloud",
        "browse to evil dot com"};
    return commands;
}

}  // namespace asrdet
